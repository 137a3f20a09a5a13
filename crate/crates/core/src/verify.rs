//! Cross-method verification suite.
//!
//! Each check compares independent routes to the same numbers and reports
//! the first disagreement it finds.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::One;

use crate::error::Result;
use crate::formula::{cdes_formula, cdes_formula_typed, gap_vector};
use crate::genocchi::{brute_genocchi_perm_count, genocchi_number, DEFAULT_GENOCCHI_CAP};
use crate::perm::{brute_cdes_table, brute_nwexb_table, factorial, BruteCap, ValueSet};
use crate::poly::gn;
use crate::recursion::{cdes_insertion_table, cdes_recursive, MemoCache};
use crate::tableaux::{
    brute_count_tableaux, count_tableaux_by_type, count_tableaux_formula,
    shapes_with_semiperimeter, DEFAULT_FILLING_CAP,
};
use crate::tree::{tree_weight_sum, tree_weight_traversal, WeightSequence, TREE_BUILD_CAP};

/// The descent polynomials for `n = 2..=5` in canonical form.
pub const PRINTED_TABLE: [(u32, &str); 4] = [
    (2, "1 + 1*x1*y"),
    (3, "1 + 1*x1*y + 3*x2*y + 1*x1*x2*y^2"),
    (
        4,
        "1 + 1*x1*y + 3*x2*y + 7*x3*y + 1*x1*x2*y^2 + 3*x1*x3*y^2 + 7*x2*x3*y^2 + 1*x1*x2*x3*y^3",
    ),
    (
        5,
        "1 + 1*x1*y + 3*x2*y + 7*x3*y + 15*x4*y + 1*x1*x2*y^2 + 3*x1*x3*y^2 + 7*x1*x4*y^2 \
         + 7*x2*x3*y^2 + 17*x2*x4*y^2 + 31*x3*x4*y^2 + 1*x1*x2*x3*y^3 + 3*x1*x2*x4*y^3 \
         + 7*x1*x3*x4*y^3 + 15*x2*x3*x4*y^3 + 1*x1*x2*x3*x4*y^4",
    ),
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CheckOutcome {
    fn from_result(name: &'static str, result: std::result::Result<String, String>) -> Self {
        match result {
            Ok(detail) => CheckOutcome {
                name,
                passed: true,
                detail,
            },
            Err(detail) => CheckOutcome {
                name,
                passed: false,
                detail,
            },
        }
    }
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{tag} {}: {}", self.name, self.detail)
    }
}

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub max_n: u32,
    pub brute_cap: BruteCap,
    pub filling_cap: usize,
    /// Extra sets checked by the formula, typed, recursion and tree routes.
    pub sampled_sets: Vec<ValueSet>,
}

impl VerifyConfig {
    pub fn new(max_n: u32) -> Self {
        VerifyConfig {
            max_n,
            brute_cap: BruteCap::default(),
            filling_cap: DEFAULT_FILLING_CAP,
            sampled_sets: Vec::new(),
        }
    }
}

type CheckResult = std::result::Result<String, String>;

fn internal(e: crate::Error) -> String {
    format!("error: {e}")
}

/// Runs every check and returns one outcome per check.
pub fn run(config: &VerifyConfig) -> Vec<CheckOutcome> {
    let brute_n = config.max_n.min(config.brute_cap.get());
    vec![
        CheckOutcome::from_result("printed-table", check_printed_table()),
        CheckOutcome::from_result("method-agreement", check_methods(brute_n, config.brute_cap)),
        CheckOutcome::from_result("insertion-table", check_insertion(config.max_n)),
        CheckOutcome::from_result("mass", check_mass(config.max_n, brute_n, config.brute_cap)),
        CheckOutcome::from_result("singleton-law", check_singletons(64)),
        CheckOutcome::from_result("tableaux", check_tableaux(config.max_n, config.filling_cap)),
        CheckOutcome::from_result("nwexb-identity", check_nwexb(brute_n, config.brute_cap)),
        CheckOutcome::from_result("genocchi", check_genocchi(config.brute_cap)),
        CheckOutcome::from_result(
            "polynomial-coefficients",
            check_polynomials(config.max_n.min(9)),
        ),
        CheckOutcome::from_result("sampled-sets", check_sampled(&config.sampled_sets)),
    ]
}

pub fn check_printed_table() -> CheckResult {
    for (n, expect) in PRINTED_TABLE {
        let got = gn(n).map_err(internal)?.to_string();
        if got != expect {
            return Err(format!("g_{n} = {got}, expected {expect}"));
        }
    }
    Ok("g_2..g_5 reproduced".into())
}

/// Every route on one set; `Err` names the first route that disagrees with
/// the formula.
pub fn all_routes_agree(
    n: u32,
    set: &ValueSet,
    cache: &MemoCache,
    expect: Option<&BigUint>,
) -> CheckResult {
    let formula = cdes_formula(n, set).map_err(internal)?;
    if let Some(e) = expect {
        if *e != formula {
            return Err(format!("n={n} S={set}: brute {e} vs formula {formula}"));
        }
    }
    let typed = cdes_formula_typed(n, set).map_err(internal)?;
    if typed != formula {
        return Err(format!("n={n} S={set}: typed {typed} vs formula {formula}"));
    }
    let rec = cdes_recursive(n, set, cache).map_err(internal)?;
    if rec != formula {
        return Err(format!(
            "n={n} S={set}: recursion {rec} vs formula {formula}"
        ));
    }
    if !set.contains(1) {
        let d = WeightSequence::new(gap_vector(set).map_err(internal)?.gaps().to_vec());
        let tree = tree_weight_sum(&d).map_err(internal)?;
        if tree != BigInt::from(formula.clone()) {
            return Err(format!(
                "n={n} S={set}: tree sum {tree} vs formula {formula}"
            ));
        }
        if d.len() <= TREE_BUILD_CAP.min(12) {
            let walk = tree_weight_traversal(&d).map_err(internal)?;
            if walk != tree {
                return Err(format!(
                    "n={n} S={set}: tree walk {walk} vs tree sum {tree}"
                ));
            }
        }
    }
    Ok(String::new())
}

pub fn check_methods(max_n: u32, cap: BruteCap) -> CheckResult {
    let cache = MemoCache::new();
    let mut sets = 0usize;
    for n in 1..=max_n {
        let table = brute_cdes_table(n, cap).map_err(internal)?;
        for s in ValueSet::subsets_of_interval(n) {
            all_routes_agree(n, &s, &cache, Some(&table.get(&s)))?;
            sets += 1;
        }
    }
    Ok(format!(
        "brute = formula = typed = recursion = tree on {sets} sets, n <= {max_n}"
    ))
}

pub fn check_insertion(max_n: u32) -> CheckResult {
    for n in 1..=max_n {
        let table = cdes_insertion_table(n).map_err(internal)?;
        for s in ValueSet::subsets_of_interval(n) {
            let f = cdes_formula(n, &s).map_err(internal)?;
            if table.get(&s) != f {
                return Err(format!(
                    "n={n} S={s}: insertion {} vs formula {f}",
                    table.get(&s)
                ));
            }
        }
    }
    Ok(format!(
        "insertion tables match the formula for n <= {max_n}"
    ))
}

pub fn check_mass(max_n: u32, brute_n: u32, cap: BruteCap) -> CheckResult {
    for n in 1..=max_n {
        let total: BigUint = ValueSet::subsets_of_interval(n)
            .map(|s| cdes_formula(n, &s))
            .sum::<Result<BigUint>>()
            .map_err(internal)?;
        if total != factorial(n) {
            return Err(format!("n={n}: formula total {total} != n!"));
        }
    }
    for n in 1..=brute_n {
        let total = brute_cdes_table(n, cap).map_err(internal)?.total();
        if total != factorial(n) {
            return Err(format!("n={n}: brute total {total} != n!"));
        }
    }
    Ok(format!(
        "totals equal n! (formula n <= {max_n}, brute n <= {brute_n})"
    ))
}

pub fn check_singletons(max_n: u32) -> CheckResult {
    for n in 2..=max_n {
        let got = cdes_formula(n, &ValueSet::new(vec![n]).map_err(internal)?).map_err(internal)?;
        let expect = (BigUint::one() << (n - 1)) - 1u32;
        if got != expect {
            return Err(format!("n={n}: {got} != 2^(n-1) - 1"));
        }
    }
    Ok(format!("cdes_n({{n}}) = 2^(n-1) - 1 for 2 <= n <= {max_n}"))
}

pub fn check_tableaux(max_n: u32, filling_cap: usize) -> CheckResult {
    let mut shapes = 0usize;
    let mut mass = BigUint::one();
    for n in 2..=max_n {
        for shape in shapes_with_semiperimeter(n) {
            let formula = count_tableaux_formula(&shape);
            mass += &formula;
            let by_type = count_tableaux_by_type(&shape).map_err(internal)?;
            if by_type != formula {
                return Err(format!("shape {shape}: type sum {by_type} vs {formula}"));
            }
            if shape.boxes() <= filling_cap {
                let brute = brute_count_tableaux(&shape, filling_cap).map_err(internal)?;
                if brute != formula {
                    return Err(format!("shape {shape}: fillings {brute} vs {formula}"));
                }
                shapes += 1;
            }
        }
        if mass != factorial(n) {
            return Err(format!(
                "shapes up to semiperimeter {n} total {mass}, expected n!"
            ));
        }
    }
    Ok(format!(
        "{shapes} shapes enumerated, semiperimeter <= {max_n}"
    ))
}

pub fn check_nwexb(max_n: u32, cap: BruteCap) -> CheckResult {
    for n in 1..=max_n {
        let cdes = brute_cdes_table(n, cap).map_err(internal)?;
        let nwexb = brute_nwexb_table(n, cap).map_err(internal)?;
        if cdes != nwexb {
            return Err(format!("n={n}: distributions differ"));
        }
    }
    Ok(format!(
        "NWEXB and CDES distributions equal for n <= {max_n}"
    ))
}

pub fn check_genocchi(cap: BruteCap) -> CheckResult {
    let limit = DEFAULT_GENOCCHI_CAP.min(cap.get());
    let mut pairs = 0;
    for k in 1..=3 {
        for n in 1..=limit / k {
            let brute = brute_genocchi_perm_count(k, n, limit).map_err(internal)?;
            let g = genocchi_number(k, n + 1).map_err(internal)?;
            if brute != g {
                return Err(format!("k={k} n={n}: permutations {brute} vs G {g}"));
            }
            pairs += 1;
        }
    }
    Ok(format!("{pairs} (k, n) pairs with kn <= {limit}"))
}

pub fn check_polynomials(max_n: u32) -> CheckResult {
    for n in 1..=max_n {
        let g = gn(n).map_err(internal)?;
        for (m, _) in g.terms() {
            if !m.is_squarefree() || m.ydeg() as usize != m.xvars().len() {
                return Err(format!("g_{n}: bad monomial {m}"));
            }
        }
        for s in ValueSet::subsets_of_interval(n) {
            let c = g.coefficient_of_set(&s).map_err(internal)?;
            let f = cdes_formula(n, &s).map_err(internal)?;
            if c != BigInt::from(f.clone()) {
                return Err(format!("g_{n}: coefficient of S={s} is {c}, formula {f}"));
            }
        }
    }
    Ok(format!(
        "g_n coefficients equal the formula for n <= {max_n}"
    ))
}

pub fn check_sampled(sets: &[ValueSet]) -> CheckResult {
    let cache = MemoCache::new();
    for s in sets {
        let n = s.largest().unwrap_or(1);
        all_routes_agree(n, s, &cache, None)?;
    }
    Ok(format!("{} sampled sets", sets.len()))
}
