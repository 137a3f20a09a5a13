//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.
//!
//! Run with `cargo test -p cdes-core --test acceptance`.

use std::process::ExitCode;
use std::time::Instant;

use cdes::formula::cdes_formula_typed;
use cdes::genocchi::{brute_genocchi_perm_count, genocchi_number};
use cdes::perm::{brute_nwexb_table, factorial};
use cdes::poly::{compositions, gn, tau};
use cdes::tableaux::{brute_count_tableaux, count_tableaux_formula, partitions};
use cdes::tree::{build_tree, leaf_theta, leaf_theta_inverse, tree_weight_sum, WeightSequence};
use cdes::verify::PRINTED_TABLE;
use cdes::{
    brute_cdes_table, cdes_formula, cdes_insertion_table, cdes_recursive, gap_vector, BruteCap,
    MemoCache, ValueSet,
};
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn err(e: cdes::Error) -> String {
    format!("error: {e}")
}

fn brute_cap() -> BruteCap {
    BruteCap::new(10).unwrap()
}

fn printed_table() -> Outcome {
    for (n, expect) in PRINTED_TABLE {
        let got = gn(n).map_err(err)?.to_string();
        if got != expect {
            return Err(format!("g_{n}: got {got}"));
        }
    }
    Ok("g_2..g_5".into())
}

fn four_way_agreement() -> Outcome {
    let cache = MemoCache::new();
    let mut sets = 0;
    for n in 1..=8 {
        let brute = brute_cdes_table(n, brute_cap()).map_err(err)?;
        for s in ValueSet::subsets_of_interval(n) {
            let b = brute.get(&s);
            let f = cdes_formula(n, &s).map_err(err)?;
            let t = cdes_formula_typed(n, &s).map_err(err)?;
            let r = cdes_recursive(n, &s, &cache).map_err(err)?;
            let d = WeightSequence::new(gap_vector(&s).map_err(err)?.gaps().to_vec());
            let w = tree_weight_sum(&d).map_err(err)?;
            if b != f || t != f || r != f || w != BigInt::from(f.clone()) {
                return Err(format!(
                    "n={n} S={s}: brute {b}, formula {f}, typed {t}, recursion {r}, tree {w}"
                ));
            }
            sets += 1;
        }
    }
    Ok(format!("{sets} (n, S) pairs, n <= 8"))
}

fn insertion_table() -> Outcome {
    for n in 1..=12 {
        let table = cdes_insertion_table(n).map_err(err)?;
        for s in ValueSet::subsets_of_interval(n) {
            let f = cdes_formula(n, &s).map_err(err)?;
            if table.get(&s) != f {
                return Err(format!(
                    "n={n} S={s}: insertion {} vs formula {f}",
                    table.get(&s)
                ));
            }
        }
    }
    Ok("n <= 12".into())
}

fn mass() -> Outcome {
    for n in 1..=12 {
        let mut total = BigUint::zero();
        for s in ValueSet::subsets_of_interval(n) {
            total += cdes_formula(n, &s).map_err(err)?;
        }
        if total != factorial(n) {
            return Err(format!("n={n}: formula total {total}"));
        }
    }
    for n in 1..=8 {
        let total = brute_cdes_table(n, brute_cap()).map_err(err)?.total();
        if total != factorial(n) {
            return Err(format!("n={n}: brute total {total}"));
        }
    }
    Ok("formula n <= 12, brute n <= 8".into())
}

fn singleton_law() -> Outcome {
    for n in 2..=64 {
        let s = ValueSet::new(vec![n]).unwrap();
        let got = cdes_formula(n, &s).map_err(err)?;
        let expect = (BigUint::one() << (n - 1)) - 1u32;
        if got != expect {
            return Err(format!("n={n}: {got}"));
        }
    }
    Ok("2 <= n <= 64".into())
}

fn tableaux() -> Outcome {
    let mut shapes = 0;
    for boxes in 1..=16 {
        for shape in partitions(boxes, 5) {
            let brute = brute_count_tableaux(&shape, 16).map_err(err)?;
            let formula = count_tableaux_formula(&shape);
            if brute != formula {
                return Err(format!("shape {shape}: brute {brute} vs formula {formula}"));
            }
            shapes += 1;
        }
    }
    Ok(format!("{shapes} shapes, <= 16 boxes, <= 5 rows"))
}

fn nwexb() -> Outcome {
    for n in 1..=8 {
        let cdes = brute_cdes_table(n, brute_cap()).map_err(err)?;
        let nwexb = brute_nwexb_table(n, brute_cap()).map_err(err)?;
        if cdes != nwexb {
            return Err(format!("n={n}: distributions differ"));
        }
    }
    Ok("n <= 8".into())
}

fn genocchi() -> Outcome {
    let expect = [1u32, 1, 3, 17, 155, 2073];
    for (n, &e) in (1..).zip(&expect) {
        let got = genocchi_number(2, n).map_err(err)?;
        if got != BigUint::from(e) {
            return Err(format!("G_{}^(2) = {got}, expected {e}", 2 * n));
        }
    }
    let pairs = [(1, 1..=4), (2, 1..=3), (3, 1..=2)];
    for (k, range) in pairs {
        for n in range {
            let brute = brute_genocchi_perm_count(k, n, 12).map_err(err)?;
            let g = genocchi_number(k, n + 1).map_err(err)?;
            if brute != g {
                return Err(format!("k={k} n={n}: permutations {brute} vs G {g}"));
            }
        }
    }
    Ok("G^(2) sequence and 9 permutation counts".into())
}

fn structural() -> Outcome {
    for k in 0..=12 {
        let tree = build_tree(k).map_err(err)?;
        let mut codes = Vec::new();
        for path in tree.leaf_paths() {
            let bits = leaf_theta(&path).map_err(err)?;
            if leaf_theta_inverse(&bits).map_err(err)? != path {
                return Err(format!("k={k}: theta round trip fails on {path:?}"));
            }
            codes.push(bits);
        }
        codes.sort();
        codes.dedup();
        if codes.len() != 1 << k {
            return Err(format!("k={k}: {} distinct codes", codes.len()));
        }
    }
    for n in 1..=9 {
        for (m, _) in gn(n).map_err(err)?.terms() {
            if m.ydeg() as usize != m.xvars().len() {
                return Err(format!("g_{n}: monomial {m}"));
            }
        }
    }
    for total in 1..=10 {
        for parts in 1..=total {
            for d in compositions(total, parts) {
                let gaps = gap_vector(&tau(&d).map_err(err)?).map_err(err)?;
                let mut reversed = d.clone();
                reversed.reverse();
                if gaps.gaps() != reversed {
                    return Err(format!("D={d:?}: gap vector {:?}", gaps.gaps()));
                }
            }
        }
    }
    Ok("theta k <= 12, ydeg n <= 9, gap vector of tau up to 10".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("1 printed descent polynomials", printed_table),
        ("2 four-way method agreement", four_way_agreement),
        ("3 insertion table", insertion_table),
        ("4 total mass n!", mass),
        ("5 singleton law", singleton_law),
        ("6 tableaux by shape", tableaux),
        ("7 NWEXB equidistribution", nwexb),
        ("8 Genocchi numbers", genocchi),
        ("9 structural checks", structural),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        let outcome = check();
        let ms = start.elapsed().as_millis();
        match outcome {
            Ok(detail) => println!("PASS {name}: {detail} ({ms} ms)"),
            Err(detail) => {
                println!("FAIL {name}: {detail} ({ms} ms)");
                failed += 1;
            }
        }
    }
    println!("{} of 9 criteria passed", 9 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
