use cdes::formula::cdes_formula_typed;
use cdes::genocchi::{brute_genocchi_perm_count, genocchi_number};
use cdes::poly::gn;
use cdes::tableaux::{
    brute_count_tableaux, count_tableaux_by_type, count_tableaux_formula, shape_to_descent_set,
    PartitionShape,
};
use cdes::tree::{build_tree, tree_weight_sum, tree_weight_traversal, WeightSequence};
use cdes::verify::{self, VerifyConfig};
use cdes::{
    brute_cdes_count, brute_cdes_table, cdes_formula, cdes_insertion_table, cdes_recursive,
    gap_vector, BruteCap, CountTable, Error, MemoCache, Result, ValueSet,
};
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::output::Record;

/// A finished command: the record to print and whether a cross-check failed.
pub struct Outcome {
    pub record: Record,
    pub mismatch: bool,
}

impl From<Record> for Outcome {
    fn from(record: Record) -> Self {
        Outcome {
            record,
            mismatch: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum CountMethod {
    Formula,
    Typed,
    Recursion,
    Tree,
    Brute,
}

impl CountMethod {
    fn name(self) -> &'static str {
        match self {
            CountMethod::Formula => "formula",
            CountMethod::Typed => "typed",
            CountMethod::Recursion => "recursion",
            CountMethod::Tree => "tree",
            CountMethod::Brute => "brute",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum TableMethod {
    Formula,
    Insertion,
    Brute,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum TreeMethod {
    Sum,
    Traversal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum TableauxMethod {
    Formula,
    Type,
    Brute,
}

fn count_with(method: CountMethod, n: u32, set: &ValueSet, cap: BruteCap) -> Result<BigUint> {
    match method {
        CountMethod::Formula => cdes_formula(n, set),
        CountMethod::Typed => cdes_formula_typed(n, set),
        CountMethod::Recursion => cdes_recursive(n, set, &MemoCache::new()),
        CountMethod::Brute => brute_cdes_count(n, set, cap),
        CountMethod::Tree => {
            // validates n and containment the same way as the other routes
            let expect = cdes_formula(n, set)?;
            if set.contains(1) {
                return Ok(expect);
            }
            let d = WeightSequence::new(gap_vector(set)?.gaps().to_vec());
            let w = tree_weight_sum(&d)?;
            w.to_biguint().ok_or_else(|| Error::OutOfRange {
                what: "tree weight sign",
                value: 0,
                range: "nonnegative".into(),
            })
        }
    }
}

pub fn count(
    n: u32,
    set: &ValueSet,
    method: CountMethod,
    all_methods: bool,
    cap: BruteCap,
) -> Result<Outcome> {
    let set_json = json!(set.elements());
    if !all_methods {
        let value = count_with(method, n, set, cap)?;
        let query = json!({"n": n, "set": set_json, "method": method.name()});
        return Ok(Record::scalar(query, value.to_string()).into());
    }
    let mut methods = vec![
        CountMethod::Formula,
        CountMethod::Typed,
        CountMethod::Recursion,
        CountMethod::Tree,
    ];
    if n <= cap.get() {
        methods.push(CountMethod::Brute);
    }
    let mut rows = Vec::new();
    let mut values = Vec::new();
    for m in methods {
        let value = count_with(m, n, set, cap)?;
        rows.push(vec![json!(m.name()), json!(value.to_string())]);
        values.push(value);
    }
    let mismatch = values.windows(2).any(|w| w[0] != w[1]);
    let query = json!({"n": n, "set": set_json, "method": "all"});
    Ok(Outcome {
        record: Record::rows(query, &["method", "count"], rows),
        mismatch,
    })
}

pub fn table(n: u32, method: TableMethod, cap: BruteCap) -> Result<Outcome> {
    check_table_n("table n", n)?;
    let (name, table) = match method {
        TableMethod::Formula => ("formula", formula_table(n)?),
        TableMethod::Insertion => ("insertion", cdes_insertion_table(n)?),
        TableMethod::Brute => ("brute", brute_cdes_table(n, cap)?),
    };
    let rows = ValueSet::subsets_of_interval(n)
        .map(|s| vec![json!(s.elements()), json!(table.get(&s).to_string())])
        .collect();
    let query = json!({"n": n, "method": name});
    Ok(Record::rows(query, &["set", "count"], rows).into())
}

/// Largest `n` for which a full table is listed; `2^(n-1)` rows.
const TABLE_CAP: u32 = 24;

fn check_table_n(what: &'static str, n: u32) -> Result<()> {
    if n > TABLE_CAP {
        return Err(Error::CapExceeded {
            what,
            requested: n as u64,
            cap: TABLE_CAP as u64,
        });
    }
    Ok(())
}

fn formula_table(n: u32) -> Result<CountTable> {
    let mut table = CountTable::new(n);
    for s in ValueSet::subsets_of_interval(n) {
        let value = cdes_formula(n, &s)?;
        table.add(s, value);
    }
    Ok(table)
}

pub fn poly(n: u32) -> Result<Outcome> {
    check_table_n("poly n", n)?;
    let g = gn(n)?;
    Ok(Record::scalar(json!({"n": n}), g.to_string()).into())
}

pub fn tree(
    gaps: Option<Vec<u32>>,
    set: Option<ValueSet>,
    show: bool,
    method: TreeMethod,
) -> Result<Outcome> {
    let mut query = json!({});
    let d = match (gaps, set) {
        (Some(g), None) => g,
        (None, Some(s)) => {
            query["set"] = json!(s.elements());
            gap_vector(&s)?.gaps().to_vec()
        }
        _ => return Err(Error::Parse("give exactly one of --gaps or --set".into())),
    };
    query["gaps"] = json!(d);
    let d = WeightSequence::new(d);
    let (name, w) = match method {
        TreeMethod::Sum => ("sum", tree_weight_sum(&d)?),
        TreeMethod::Traversal => ("traversal", tree_weight_traversal(&d)?),
    };
    query["method"] = json!(name);
    let mut record = Record::scalar(query, w.to_string());
    if show {
        let dump = build_tree(d.len())?.render();
        record.text = format!("{}\n{}", record.text, dump.trim_end());
        record.extra.push(("tree".into(), Value::String(dump)));
    }
    Ok(record.into())
}

pub fn tableaux(
    shape: &PartitionShape,
    method: TableauxMethod,
    filling_cap: usize,
) -> Result<Outcome> {
    let (name, value) = match method {
        TableauxMethod::Formula => ("formula", count_tableaux_formula(shape)),
        TableauxMethod::Type => ("type", count_tableaux_by_type(shape)?),
        TableauxMethod::Brute => ("brute", brute_count_tableaux(shape, filling_cap)?),
    };
    let (n, set) = shape_to_descent_set(shape);
    let query = json!({
        "shape": shape.parts(),
        "method": name,
        "n": n,
        "set": set.elements(),
    });
    Ok(Record::scalar(query, value.to_string()).into())
}

pub fn genocchi(k: u32, n: u32, brute: bool, cap: BruteCap) -> Result<Outcome> {
    let g = genocchi_number(k, n)?;
    let query = json!({"k": k, "n": n});
    if !brute {
        return Ok(Record::scalar(query, g.to_string()).into());
    }
    // G_{2n} counts permutations of [k(n-1)]
    let b = brute_genocchi_perm_count(k, n - 1, cap.get())?;
    let mismatch = b != g;
    let rows = vec![
        vec![json!("gandhi"), json!(g.to_string())],
        vec![json!("brute"), json!(b.to_string())],
    ];
    Ok(Outcome {
        record: Record::rows(query, &["method", "value"], rows),
        mismatch,
    })
}

/// Sampled sets are drawn from `[2, SAMPLE_RANGE]`.
const SAMPLE_RANGE: u32 = 20;

pub fn sample_sets(seed: u64, count: usize) -> Vec<ValueSet> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let mask: u64 = rng.gen_range(0..1u64 << (SAMPLE_RANGE - 1));
            ValueSet::from_mask(mask << 1)
        })
        .collect()
}

pub fn verify(max_n: u32, seed: u64, samples: usize, cap: BruteCap) -> Result<Outcome> {
    if max_n == 0 || max_n > TABLE_CAP {
        return Err(Error::OutOfRange {
            what: "max-n",
            value: max_n as u64,
            range: format!("1..={TABLE_CAP}"),
        });
    }
    let mut config = VerifyConfig::new(max_n);
    config.brute_cap = cap;
    config.sampled_sets = sample_sets(seed, samples);
    let outcomes = verify::run(&config);
    let mismatch = outcomes.iter().any(|o| !o.passed);
    let rows: Vec<Vec<Value>> = outcomes
        .iter()
        .map(|o| {
            let status = if o.passed { "pass" } else { "fail" };
            vec![json!(o.name), json!(status), json!(o.detail)]
        })
        .collect();
    let query = json!({"max_n": max_n, "seed": seed, "samples": samples});
    let mut record = Record::rows(query, &["check", "status", "detail"], rows);
    record.text = outcomes
        .iter()
        .map(|o| o.to_string())
        .collect::<Vec<_>>()
        .join("\n");
    Ok(Outcome { record, mismatch })
}

#[cfg(test)]
mod tests {
    use super::*;
    use cdes::recursion::cdes_recursive_uncached;

    fn set(v: &[u32]) -> ValueSet {
        ValueSet::new(v.to_vec()).unwrap()
    }

    #[test]
    fn every_method_counts_the_same() {
        let cap = BruteCap::default();
        for s in ValueSet::subsets_of_interval(6) {
            let expect = cdes_recursive_uncached(6, &s).unwrap();
            for m in [
                CountMethod::Formula,
                CountMethod::Typed,
                CountMethod::Recursion,
                CountMethod::Tree,
                CountMethod::Brute,
            ] {
                assert_eq!(
                    count_with(m, 6, &s, cap).unwrap(),
                    expect,
                    "{} S={s}",
                    m.name()
                );
            }
        }
    }

    #[test]
    fn tree_route_handles_one() {
        let cap = BruteCap::default();
        assert_eq!(
            count_with(CountMethod::Tree, 4, &set(&[1, 3]), cap).unwrap(),
            0u32.into()
        );
        assert!(count_with(CountMethod::Tree, 3, &set(&[5]), cap).is_err());
    }

    #[test]
    fn samples_are_reproducible_and_avoid_one() {
        let a = sample_sets(7, 20);
        assert_eq!(a, sample_sets(7, 20));
        assert!(a
            .iter()
            .all(|s| !s.contains(1) && s.largest().unwrap_or(2) <= SAMPLE_RANGE));
    }

    #[test]
    fn all_methods_reports_brute_only_within_cap() {
        let cap = BruteCap::new(5).unwrap();
        let out = count(6, &set(&[3, 5]), CountMethod::Formula, true, cap).unwrap();
        assert!(!out.mismatch);
        assert_eq!(out.record.csv_rows.len(), 4);
        let out = count(5, &set(&[3, 5]), CountMethod::Formula, true, cap).unwrap();
        assert_eq!(out.record.csv_rows.len(), 5);
        assert!(out.record.text.ends_with("brute\t17"));
    }
}
