//! Verification suites comparing computed modules against known
//! decompositions and closed-form predictions.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::characters::{factorial, Decomposition};
use crate::combinatorics::{kw_multiplicity, Partition};
use crate::error::{CombinatoricsError, Error};
use crate::filippov::{beta_gamma, num_letters, rho_decompose, rho_summary};
use crate::linalg::ArithmeticMode;
use crate::specht::{phi_check, presentation_check};
use crate::tree_specht::{embed_check, enumerate_plane_trees, t_partitions};

/// One checked instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Case {
    pub case: String,
    /// What the expected value is taken from.
    pub reference: String,
    pub expected: String,
    pub computed: String,
    pub passed: bool,
}

impl Case {
    fn new(case: String, reference: &str, expected: String, computed: String, passed: bool) -> Self {
        Case {
            case,
            reference: reference.to_string(),
            expected,
            computed,
            passed,
        }
    }

    fn error(case: String, reference: &str, expected: String, e: Error) -> Self {
        Case::new(case, reference, expected, format!("error: {e}"), false)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub cases: Vec<Case>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.cases.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> usize {
        self.cases.iter().filter(|c| !c.passed).count()
    }
}

fn parse_terms(degree: usize, terms: &[&str]) -> Decomposition {
    Decomposition::from_pairs(
        degree,
        terms
            .iter()
            .map(|t| (t.parse::<Partition>().expect("valid literal"), 1)),
    )
}

/// The known decomposition of the module for (n, k) with k ≤ 4, as
/// published for the multilinear Filippov component.
pub fn known_decomposition(n: usize, k: usize) -> Option<Decomposition> {
    if n < 2 || !(1..=4).contains(&k) {
        return None;
    }
    let m = num_letters(n, k);
    let row = |len: usize, times: usize, rest: &str| {
        let mut s = String::new();
        if times > 0 {
            s = format!("{len}^{times}");
        }
        if !rest.is_empty() {
            if !s.is_empty() {
                s.push(',');
            }
            s.push_str(rest);
        }
        s
    };
    let terms: Vec<String> = match k {
        1 => vec![format!("1^{n}")],
        2 => vec![row(2, n - 1, "1")],
        3 => vec![row(3, n - 1, "1"), row(3, n - 2, "2,1^2")],
        _ if n == 2 => ["4,1", "3,2", "3,1^2", "2^2,1", "2,1^3"].map(String::from).to_vec(),
        _ => vec![
            row(4, n - 1, "1"),
            row(4, n - 2, "3,2"),
            row(4, n - 2, "3,1^2"),
            row(4, n - 2, "2^2,1"),
            row(4, n - 2, "2,1^3"),
            row(4, n - 3, "3^2,1^3"),
            row(4, n - 3, "3,2^3"),
        ],
    };
    let refs: Vec<&str> = terms.iter().map(String::as_str).collect();
    Some(parse_terms(m, &refs))
}

/// The Lie representation table: multiplicity of each S^λ, λ ⊢ m, given by
/// standard tableaux with major index ≡ i (mod m).
pub fn kw_table(m: usize, i: usize) -> Result<Decomposition, Error> {
    if m == 0 || num_integer::gcd(i, m) != 1 {
        return Err(CombinatoricsError::NotCoprime { i, m }.into());
    }
    let mut d = Decomposition::new(m);
    for l in Partition::all(m) {
        let mult = kw_multiplicity(&l, i)?;
        if mult > 0 {
            d.add(l, mult as u64);
        }
    }
    Ok(d)
}

/// Cells (n, k) with n ≥ 2, 1 ≤ k ≤ 4 and at most `max_degree` letters.
pub fn table_cells(max_degree: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for k in 1..=4 {
        for n in 2.. {
            if num_letters(n, k) > max_degree {
                break;
            }
            out.push((n, k));
        }
    }
    out.sort();
    out
}

/// Decompositions of every cell within `max_degree` against the known
/// table, plus the top-row split for (3, 4) when in range.
pub fn verify_decompositions(max_degree: usize, mode: ArithmeticMode, cap: usize) -> SuiteReport {
    const REF: &str = "published decomposition table";
    let mut cases: Vec<Case> = table_cells(max_degree)
        .into_par_iter()
        .map(|(n, k)| {
            let expected = known_decomposition(n, k).expect("cell in range");
            let label = format!("decompose({n},{k})");
            match rho_decompose(n, k, mode, cap) {
                Ok((s, d)) => Case::new(
                    label,
                    REF,
                    expected.to_string(),
                    d.to_string(),
                    d == expected && s.dim as u128 == expected.dimension(),
                ),
                Err(e) => Case::error(label, REF, expected.to_string(), e),
            }
        })
        .collect();
    if num_letters(3, 4) <= max_degree {
        let gamma = parse_terms(9, &["3^2,1^3", "3,2^3"]);
        let expected = format!("dim beta = 873, dim gamma = 204, gamma = {gamma}");
        let label = "top-row split(3,4)".to_string();
        cases.push(match beta_gamma(3, 4, mode, cap) {
            Ok(bg) => {
                let computed = format!(
                    "dim beta = {}, dim gamma = {}, gamma = {}",
                    bg.beta.dimension(),
                    bg.gamma.dimension(),
                    bg.gamma
                );
                let ok = bg.beta.dimension() == 873 && bg.gamma.dimension() == 204 && bg.gamma == gamma;
                Case::new(label, "published dimension count for (3,4)", expected, computed, ok)
            }
            Err(e) => Case::error(label, "published dimension count for (3,4)", expected, e),
        });
    }
    SuiteReport {
        suite: "decompositions".into(),
        cases,
    }
}

/// Both Garnir presentations of S^λ for every λ ⊢ m ≤ `max_size`.
pub fn verify_presentations(max_size: usize, mode: ArithmeticMode) -> SuiteReport {
    const REF: &str = "Specht module of the same shape";
    let lambdas: Vec<Partition> = (1..=max_size).flat_map(Partition::all).collect();
    let cases = lambdas
        .par_iter()
        .map(|l| {
            let label = format!("presentation({l})");
            let expected = format!("dim {}, irreducible", l.hook_length_dimension());
            match presentation_check(l, mode) {
                Ok(c) => Case::new(
                    label,
                    REF,
                    expected,
                    format!(
                        "first {}, new {}, same relations {}, irreducible {}",
                        c.first_dim, c.new_dim, c.same_relations, c.irreducible
                    ),
                    c.passed(),
                ),
                Err(e) => Case::error(label, REF, expected, e),
            }
        })
        .collect();
    SuiteReport {
        suite: "presentation".into(),
        cases,
    }
}

/// The operator φ_d on S^{λ₁} • S^{λ₂} for |λ₁| + |λ₂| ≤ `max_size`,
/// λ₁, λ₂ nonempty and cols(λ₁) ≤ d ≤ `max_d`.
pub fn verify_phi_kernels(max_size: usize, max_d: usize, mode: ArithmeticMode) -> SuiteReport {
    const REF: &str = "closed-form eigenvalues of the cross-transposition operator";
    let mut instances = Vec::new();
    for total in 2..=max_size {
        for a in 1..total {
            for l1 in Partition::all(a) {
                for l2 in Partition::all(total - a) {
                    for d in l1.num_columns().max(1)..=max_d {
                        instances.push((l1.clone(), l2.clone(), d));
                    }
                }
            }
        }
    }
    let cases = instances
        .par_iter()
        .map(|(l1, l2, d)| {
            let label = format!("phi({l1}; {l2}; d={d})");
            match phi_check(std::slice::from_ref(l1), l2, *d, mode) {
                Ok(c) => Case::new(
                    label,
                    REF,
                    format!("kernel {}, scalars >= 0", c.expected_kernel),
                    format!(
                        "kernel {}, scalars >= 0: {}, formulas agree: {}",
                        c.kernel, c.nonnegative, c.formulas_agree
                    ),
                    c.passed(),
                ),
                Err(e) => Case::error(label, REF, String::new(), e),
            }
        })
        .collect();
    SuiteReport {
        suite: "phi-kernel".into(),
        cases,
    }
}

/// Tree Specht modules of both kinds for every plane tree with at most
/// `max_nodes` nodes and every T-partition of N ≤ `max_n`.
pub fn verify_tree_specht(max_nodes: usize, max_n: usize, mode: ArithmeticMode) -> SuiteReport {
    const REF: &str = "column shape of tree Specht modules";
    let mut instances = Vec::new();
    for s in 1..=max_nodes {
        for tree in enumerate_plane_trees(s) {
            for n in s..=max_n {
                instances.extend(t_partitions(&tree, n));
            }
        }
    }
    let cases = instances
        .par_iter()
        .map(|mu| {
            let label = format!("tree_specht{mu}");
            let nodes = mu.tree().size();
            let expected = format!(
                "{nodes} columns, last of length {}, first <= second{}",
                mu.root_value(),
                if mu.tree().is_path() { ", equal" } else { "" }
            );
            match embed_check(mu, mode) {
                Ok(c) => Case::new(
                    label,
                    REF,
                    expected,
                    format!(
                        "first {}, second {}{}",
                        c.first,
                        c.second,
                        if c.equal { "" } else { " (strict)" }
                    ),
                    c.passed(),
                ),
                Err(e) => Case::error(label, REF, expected, e),
            }
        })
        .collect();
    SuiteReport {
        suite: "tree-specht".into(),
        cases,
    }
}

/// Cells checked by [`verify_stabilization`]: for n ≥ k every constituent
/// has exactly k columns and nothing is left after removing top rows; below
/// that range constituents have between n and k columns.
pub const STABLE_CELLS: [(usize, usize); 5] = [(2, 2), (3, 2), (3, 3), (4, 2), (5, 2)];
pub const UNSTABLE_CELLS: [(usize, usize); 2] = [(2, 3), (2, 4)];

pub fn verify_stabilization(mode: ArithmeticMode, cap: usize) -> SuiteReport {
    let cells: Vec<(usize, usize, bool)> = STABLE_CELLS
        .iter()
        .map(|&(n, k)| (n, k, true))
        .chain(UNSTABLE_CELLS.iter().map(|&(n, k)| (n, k, false)))
        .collect();
    let cases = cells
        .par_iter()
        .map(|&(n, k, stable)| {
            let label = format!("stabilization({n},{k})");
            if stable {
                let reference = "stable range n >= k";
                let expected = format!("column counts {{{k}}}, remainder 0");
                match beta_gamma(n, k, mode, cap) {
                    Ok(bg) => {
                        let cols = column_counts(&bg.rho);
                        let ok = cols == BTreeSet::from([k]) && bg.gamma.is_empty();
                        Case::new(
                            label,
                            reference,
                            expected,
                            format!("column counts {cols:?}, remainder {}", show(&bg.gamma)),
                            ok,
                        )
                    }
                    Err(e) => Case::error(label, reference, expected, e),
                }
            } else {
                let reference = "column bounds n <= cols <= k";
                let expected = format!("column counts within [{n}, {k}]");
                match rho_decompose(n, k, mode, cap) {
                    Ok((_, d)) => {
                        let cols = column_counts(&d);
                        let ok = cols.iter().all(|c| (n..=k).contains(c));
                        Case::new(label, reference, expected, format!("column counts {cols:?}"), ok)
                    }
                    Err(e) => Case::error(label, reference, expected, e),
                }
            }
        })
        .collect();
    SuiteReport {
        suite: "stabilization".into(),
        cases,
    }
}

fn show(d: &Decomposition) -> String {
    if d.is_empty() {
        "0".into()
    } else {
        d.to_string()
    }
}

/// The set of column counts of the constituents.
pub fn column_counts(d: &Decomposition) -> BTreeSet<usize> {
    d.terms().map(|(l, _)| l.num_columns()).collect()
}

/// Lie tables for m in `ms`: independent of the unit i, of total dimension
/// (m−1)!, and for m = 5 equal to the known n = 2, k = 4 decomposition.
pub fn verify_kw(ms: std::ops::RangeInclusive<usize>) -> SuiteReport {
    const REF: &str = "Lie representation via major index";
    let cases = ms
        .collect::<Vec<_>>()
        .par_iter()
        .flat_map(|&m| {
            let mut out = Vec::new();
            let units: Vec<usize> = (1..=m).filter(|&i| num_integer::gcd(i, m) == 1).collect();
            let tables: Result<Vec<Decomposition>, Error> = units.iter().map(|&i| kw_table(m, i)).collect();
            match tables {
                Ok(tables) => {
                    let same = tables.iter().all(|t| *t == tables[0]);
                    out.push(Case::new(
                        format!("kw({m}) independent of i in {units:?}"),
                        REF,
                        "identical tables".into(),
                        tables[0].to_string(),
                        same,
                    ));
                    let total = BigInt::from(tables[0].dimension());
                    let want = factorial(m - 1);
                    out.push(Case::new(
                        format!("kw({m}) total dimension"),
                        REF,
                        want.to_string(),
                        total.to_string(),
                        total == want,
                    ));
                    if let Some(known) = (m >= 3).then(|| known_decomposition(2, m - 1)).flatten() {
                        out.push(Case::new(
                            format!("kw({m}) against table row (2,{})", m - 1),
                            "published decomposition table",
                            known.to_string(),
                            tables[0].to_string(),
                            tables[0] == known,
                        ));
                    }
                }
                Err(e) => out.push(Case::error(format!("kw({m})"), REF, String::new(), e)),
            }
            out
        })
        .collect();
    SuiteReport {
        suite: "kw".into(),
        cases,
    }
}

/// Column counts seen among the constituents that remain after removing
/// the top-row image of the (n−1, k) module. Exploratory only.
pub fn conjecture_scan(n: usize, k: usize, mode: ArithmeticMode, cap: usize) -> Result<BTreeSet<usize>, Error> {
    Ok(column_counts(&beta_gamma(n, k, mode, cap)?.gamma))
}

/// Dimension only.
pub fn dimension(n: usize, k: usize, mode: ArithmeticMode, cap: usize) -> Result<usize, Error> {
    Ok(rho_summary(n, k, mode, cap)?.dim)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_rows_have_expected_dimensions() {
        let dims: Vec<u128> = (2..=5)
            .map(|n| known_decomposition(n, 2).unwrap().dimension())
            .collect();
        assert_eq!(dims, vec![2, 5, 14, 42]);
        assert_eq!(known_decomposition(3, 4).unwrap().dimension(), 1077);
        assert_eq!(known_decomposition(2, 4).unwrap().dimension(), 24);
        assert_eq!(known_decomposition(3, 3).unwrap().dimension(), 56);
        assert!(known_decomposition(2, 5).is_none());
    }

    #[test]
    fn cells_within_nine_letters() {
        let cells = table_cells(9);
        for c in [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (3, 4), (4, 2), (5, 2)] {
            assert!(cells.contains(&c));
        }
        assert!(cells.iter().all(|&(n, k)| num_letters(n, k) <= 9));
    }

    #[test]
    fn kw_small() {
        assert_eq!(kw_table(2, 1).unwrap().to_string(), "1^2");
        assert_eq!(kw_table(3, 1).unwrap().to_string(), "21");
        assert!(kw_table(4, 2).is_err());
    }
}
