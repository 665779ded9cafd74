pub mod cli;
pub mod experiments;
pub mod group;
pub mod multiset;
pub mod realizability;
pub mod words;
