//! Acceptance run: one PASS/FAIL line per criterion, with wall-clock limits
//! where one is pinned. Exits nonzero if any criterion fails.

use std::time::{Duration, Instant};

use num_bigint::BigInt;

use lanke_core::characters::{factorial, Decomposition, DEFAULT_DEGREE_CAP};
use lanke_core::combinatorics::Partition;
use lanke_core::filippov::{beta_gamma, rho_decompose, rho_summary};
use lanke_core::linalg::ArithmeticMode;
use lanke_core::verify::{
    verify_kw, verify_phi_kernels, verify_presentations, verify_stabilization, verify_tree_specht, SuiteReport,
};

const MM: ArithmeticMode = ArithmeticMode::Multimodular;
const CAP: usize = DEFAULT_DEGREE_CAP;

type Outcome = Result<String, String>;

fn decomposition(terms: &[&str]) -> Decomposition {
    let parts: Vec<Partition> = terms.iter().map(|t| t.parse().unwrap()).collect();
    Decomposition::from_pairs(parts[0].size(), parts.into_iter().map(|p| (p, 1)))
}

fn binomial(n: u64, r: u64) -> BigInt {
    factorial(n as usize) / (factorial(r as usize) * factorial((n - r) as usize))
}

fn suite(r: SuiteReport) -> Outcome {
    let failed: Vec<String> = r
        .cases
        .iter()
        .filter(|c| !c.passed)
        .take(5)
        .map(|c| format!("{}: expected {}, computed {}", c.case, c.expected, c.computed))
        .collect();
    if failed.is_empty() {
        Ok(format!("{} cases", r.cases.len()))
    } else {
        Err(format!(
            "{} of {} cases failed; {}",
            r.failures(),
            r.cases.len(),
            failed.join("; ")
        ))
    }
}

fn check(cond: bool, detail: String) -> Outcome {
    if cond {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn dimension_3_4() -> Outcome {
    let mm = rho_summary(3, 4, MM, CAP).map_err(|e| e.to_string())?;
    check(mm.dim == 1077, format!("dim = {} (multimodular)", mm.dim))
}

fn catalan() -> Outcome {
    let mut dims = Vec::new();
    for n in 2..=5u64 {
        let d = rho_summary(n as usize, 2, MM, CAP).map_err(|e| e.to_string())?.dim;
        let want = binomial(2 * n, n) / BigInt::from(n + 1);
        if BigInt::from(d) != want {
            return Err(format!("n = {n}: dim {d}, Catalan {want}"));
        }
        dims.push(d);
    }
    Ok(format!("dims {dims:?}"))
}

fn three_brackets() -> Outcome {
    let mut out = Vec::new();
    for (n, lit) in [(2u64, ["3,1", "2,1^2"]), (3, ["3^2,1", "3,2,1^2"])] {
        let (s, d) = rho_decompose(n as usize, 3, MM, CAP).map_err(|e| e.to_string())?;
        // 4 (3n)! / ((n+1)(n+2)(n+3) (n!)^3)
        let formula = BigInt::from(4) * factorial(3 * n as usize)
            / (BigInt::from((n + 1) * (n + 2) * (n + 3)) * factorial(n as usize).pow(3));
        let expected = decomposition(&lit);
        if BigInt::from(s.dim) != formula || d != expected {
            return Err(format!("n = {n}: dim {} vs {formula}, {d} vs {expected}", s.dim));
        }
        out.push(format!("({n},3) dim {} = {d}", s.dim));
    }
    Ok(out.join(", "))
}

fn table_cells() -> Outcome {
    let cells: [((usize, usize), &[&str]); 8] = [
        ((2, 2), &["2,1"]),
        ((2, 3), &["3,1", "2,1^2"]),
        ((2, 4), &["4,1", "3,2", "3,1^2", "2^2,1", "2,1^3"]),
        ((3, 2), &["2^2,1"]),
        ((3, 3), &["3^2,1", "3,2,1^2"]),
        (
            (3, 4),
            &["4^2,1", "4,3,2", "4,3,1^2", "4,2^2,1", "4,2,1^3", "3^2,1^3", "3,2^3"],
        ),
        ((4, 2), &["2^3,1"]),
        ((5, 2), &["2^4,1"]),
    ];
    for ((n, k), lit) in cells {
        let (_, d) = rho_decompose(n, k, MM, CAP).map_err(|e| e.to_string())?;
        if d != decomposition(lit) {
            return Err(format!("({n},{k}): {d}"));
        }
    }
    let bg = beta_gamma(3, 4, MM, CAP).map_err(|e| e.to_string())?;
    let (b, g) = (bg.beta.dimension(), bg.gamma.dimension());
    check(
        b == 873 && g == 204 && bg.gamma == decomposition(&["3^2,1^3", "3,2^3"]),
        format!("8 cells; (3,4) split {b} + {g}, remainder {}", bg.gamma),
    )
}

fn kw_row() -> Outcome {
    let r = verify_kw(3..=8);
    let five = lanke_core::verify::kw_table(5, 1).map_err(|e| e.to_string())?;
    let row = decomposition(&["4,1", "3,2", "3,1^2", "2^2,1", "2,1^3"]);
    let total_ok = (3..=8).all(|m| {
        let t = lanke_core::verify::kw_table(m, 1).unwrap();
        BigInt::from(t.dimension()) == factorial(m - 1)
    });
    if five != row || !total_ok {
        return Err(format!("m = 5 gives {five}"));
    }
    suite(r)
}

struct Criterion {
    id: u8,
    name: &'static str,
    limit: Option<Duration>,
    run: fn() -> Outcome,
}

fn main() {
    let criteria = [
        Criterion {
            id: 1,
            name: "dim(3,4) = 1077",
            limit: Some(Duration::from_secs(600)),
            run: dimension_3_4,
        },
        Criterion {
            id: 2,
            name: "k = 2 dims are Catalan numbers, n = 2..5",
            limit: Some(Duration::from_secs(60)),
            run: catalan,
        },
        Criterion {
            id: 3,
            name: "k = 3 dims match the closed form; (2,3), (3,3) decompositions",
            limit: Some(Duration::from_secs(120)),
            run: three_brackets,
        },
        Criterion {
            id: 4,
            name: "decompositions of all cells with at most 9 letters; (3,4) top-row split",
            limit: None,
            run: table_cells,
        },
        Criterion {
            id: 5,
            name: "new Garnir presentation gives S^λ for |λ| <= 6",
            limit: None,
            run: || suite(verify_presentations(6, MM)),
        },
        Criterion {
            id: 6,
            name: "kernel of φ_d and nonnegative scalars, |λ1|+|λ2| <= 7, d <= 4",
            limit: None,
            run: || suite(verify_phi_kernels(7, 4, MM)),
        },
        Criterion {
            id: 7,
            name: "tree Specht modules, |T| <= 4, N <= 7",
            limit: None,
            run: || suite(verify_tree_specht(4, 7, MM)),
        },
        Criterion {
            id: 8,
            name: "column counts and empty remainder in the stable range",
            limit: None,
            run: || suite(verify_stabilization(MM, CAP)),
        },
        Criterion {
            id: 9,
            name: "Lie tables m = 3..8: i-independent, total (m-1)!, m = 5 row",
            limit: None,
            run: kw_row,
        },
    ];
    let mut failures = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let in_time = c.limit.is_none_or(|l| elapsed <= l);
        let limit = c
            .limit
            .map(|l| format!(" (limit {} s)", l.as_secs()))
            .unwrap_or_default();
        let (ok, detail) = match outcome {
            Ok(d) if in_time => (true, d),
            Ok(d) => (false, format!("{d}; over time")),
            Err(d) => (false, d),
        };
        if !ok {
            failures += 1;
        }
        println!(
            "{} criterion {}: {} [{:.1} s{}] {}",
            if ok { "PASS" } else { "FAIL" },
            c.id,
            c.name,
            elapsed.as_secs_f64(),
            limit,
            detail
        );
    }
    let total = criteria.len();
    println!("{} of {total} criteria passed", total - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
