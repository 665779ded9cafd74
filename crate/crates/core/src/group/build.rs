//! Constructors for the concrete groups the toolkit works with.
//!
//! Each constructor fixes a deterministic element order so tables and
//! reports are reproducible.

use std::collections::HashMap;

use super::{FiniteGroup, GroupError};

/// Cyclic group of order `n`. Element `k` is `g^k`, named `1`, `g`, `g^2`, ...
pub fn cyclic(n: usize) -> Result<FiniteGroup, GroupError> {
    if n == 0 {
        return Err(GroupError::InvalidSpec("cyclic group order must be at least 1".into()));
    }
    let names = (0..n).map(power_name("g")).collect();
    FiniteGroup::from_fn(n, names, |a, b| (a + b) % n)
}

fn power_name(base: &'static str) -> impl Fn(usize) -> String {
    move |k| match k {
        0 => "1".to_string(),
        1 => base.to_string(),
        _ => format!("{base}^{k}"),
    }
}

/// Symmetric group on `{1, ..., n}`, `2 <= n <= 5`.
///
/// Elements are ordered by `n - (number of cycles)` and then by their cycle
/// notation, so `S3` is `e, (12), (13), (23), (123), (132)`. Products compose
/// right to left: `(12)(23) = (123)`.
pub fn symmetric(n: usize) -> Result<FiniteGroup, GroupError> {
    if !(2..=5).contains(&n) {
        return Err(GroupError::InvalidSpec(format!(
            "symmetric degree must be between 2 and 5, got {n}"
        )));
    }
    let mut perms: Vec<(usize, String, Vec<usize>)> = permutations(n)
        .into_iter()
        .map(|p| {
            let (cycles, name) = cycle_notation(&p);
            (n - cycles, name, p)
        })
        .collect();
    perms.sort_by(|x, y| (x.0, &x.1).cmp(&(y.0, &y.1)));

    let index: HashMap<Vec<usize>, usize> = perms.iter().enumerate().map(|(i, (_, _, p))| (p.clone(), i)).collect();
    let names = perms.iter().map(|(_, name, _)| name.clone()).collect();
    FiniteGroup::from_fn(perms.len(), names, |a, b| {
        let (pa, pb) = (&perms[a].2, &perms[b].2);
        let composed: Vec<usize> = pb.iter().map(|&x| pa[x]).collect();
        index[&composed]
    })
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn rec(n: usize, current: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if current.len() == n {
            out.push(current.clone());
            return;
        }
        for x in 0..n {
            if !used[x] {
                used[x] = true;
                current.push(x);
                rec(n, current, used, out);
                current.pop();
                used[x] = false;
            }
        }
    }
    rec(n, &mut current, &mut used, &mut out);
    out
}

/// Returns the number of cycles (fixed points included) and the 1-based
/// cycle notation, `e` for the identity.
fn cycle_notation(p: &[usize]) -> (usize, String) {
    let mut seen = vec![false; p.len()];
    let mut cycles = 0;
    let mut name = String::new();
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        cycles += 1;
        let mut cycle = vec![start];
        seen[start] = true;
        let mut x = p[start];
        while x != start {
            seen[x] = true;
            cycle.push(x);
            x = p[x];
        }
        if cycle.len() > 1 {
            name.push('(');
            for x in cycle {
                name.push_str(&(x + 1).to_string());
            }
            name.push(')');
        }
    }
    if name.is_empty() {
        name.push('e');
    }
    (cycles, name)
}

/// Dihedral group of order `2n`, `n >= 2`, generated by a rotation `r` and a
/// reflection `s` with `s r s = r⁻¹`.
///
/// Index `k + n*j` is `r^k s^j`; names are `1, r, r^2, ..., s, rs, r^2s, ...`.
pub fn dihedral(n: usize) -> Result<FiniteGroup, GroupError> {
    if n < 2 {
        return Err(GroupError::InvalidSpec(format!(
            "dihedral parameter must be at least 2, got {n}"
        )));
    }
    let names = (0..2 * n)
        .map(|i| {
            let (k, j) = (i % n, i / n);
            match (k, j) {
                (0, 0) => "1".to_string(),
                (1, 0) => "r".to_string(),
                (_, 0) => format!("r^{k}"),
                (0, _) => "s".to_string(),
                (1, _) => "rs".to_string(),
                _ => format!("r^{k}s"),
            }
        })
        .collect();
    FiniteGroup::from_fn(2 * n, names, |a, b| {
        let (ka, ja) = (a % n, a / n);
        let (kb, jb) = (b % n, b / n);
        let k = (if ja == 0 { ka + kb } else { ka + n - kb }) % n;
        k + n * ((ja + jb) % 2)
    })
}

/// Quaternion group `{±1, ±i, ±j, ±k}` in that order.
pub fn quaternion() -> FiniteGroup {
    // Unit u in {1, i, j, k} and sign bit: index = 2u + sign.
    const UNIT_MUL: [[(usize, usize); 4]; 4] = [
        [(0, 0), (1, 0), (2, 0), (3, 0)],
        [(1, 0), (0, 1), (3, 0), (2, 1)],
        [(2, 0), (3, 1), (0, 1), (1, 0)],
        [(3, 0), (2, 0), (1, 1), (0, 1)],
    ];
    let names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    FiniteGroup::from_fn(8, names, |a, b| {
        let (unit, sign) = UNIT_MUL[a / 2][b / 2];
        2 * unit + ((a % 2) ^ (b % 2) ^ sign)
    })
    .expect("quaternion table is a group")
}

/// Direct product `G × K`. Index `a * |K| + b` is `(a, b)`, named `(a,b)`.
pub fn direct_product(g: &FiniteGroup, k: &FiniteGroup) -> FiniteGroup {
    let m = k.order();
    let names = g
        .elements()
        .flat_map(|a| k.elements().map(move |b| (a, b)))
        .map(|(a, b)| format!("({},{})", g.name(a), k.name(b)))
        .collect();
    FiniteGroup::from_fn(g.order() * m, names, |x, y| {
        g.mul(x / m, y / m) * m + k.mul(x % m, y % m)
    })
    .expect("product of groups is a group")
}

/// Reads a table file: the order `n`, then `n` rows of `n` indices, then a
/// line of `n` element names.
pub fn from_table_text(text: &str, path: &str) -> Result<FiniteGroup, GroupError> {
    let bad = |reason: String| GroupError::TableFile {
        path: path.to_string(),
        reason,
    };
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
    let n: usize = lines
        .next()
        .ok_or_else(|| bad("missing order line".into()))?
        .parse()
        .map_err(|e| bad(format!("order line: {e}")))?;
    let mut rows = Vec::with_capacity(n);
    for row in 0..n {
        let line = lines.next().ok_or_else(|| bad(format!("missing table row {row}")))?;
        let parsed = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<usize>()
                    .map_err(|_| bad(format!("row {row}: bad index {tok:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(parsed);
    }
    let names: Vec<String> = lines
        .next()
        .ok_or_else(|| bad("missing names line".into()))?
        .split_whitespace()
        .map(str::to_string)
        .collect();
    if let Some(extra) = lines.next() {
        return Err(bad(format!("unexpected trailing line {extra:?}")));
    }
    FiniteGroup::from_table(rows, names)
}

/// Renders `g` in the table file format read by [`from_table_text`].
pub fn to_table_text(g: &FiniteGroup) -> String {
    let mut out = format!("{}\n", g.order());
    for row in g.rows() {
        let cells: Vec<String> = row.iter().map(usize::to_string).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out.push_str(&g.names().join(" "));
    out.push('\n');
    out
}
