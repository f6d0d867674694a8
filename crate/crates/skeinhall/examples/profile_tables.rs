// Timing probe for the per-degree Macdonald tables and basic pipelines.
use std::time::Instant;

use skeinhall::partitions::Partition;
use skeinhall::symfunc::{macdonald_P, Basis, SymFunc};
use skeinhall::{hallrep, knots, skeinmod};

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let mode = args.get(1).map(|s| s.as_str()).unwrap_or("tables");
    match mode {
        "tables" => {
            let max = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(8u32);
            for d in 1..=max {
                let t0 = Instant::now();
                let lambda = Partition::new(vec![d]);
                let _ = macdonald_P(&lambda, 14).unwrap();
                println!("degree {d}: {:?}", t0.elapsed());
            }
        }
        "bridge" => {
            let t0 = Instant::now();
            let r = skeinhall::suites::qt_bridge(12);
            println!(
                "qt_bridge: {:?} ({} passed, {} failed)",
                t0.elapsed(),
                r.passed,
                r.failed
            );
        }
        "connection1" => {
            let t0 = Instant::now();
            let pairs = knots::validate_pairs(&[(2, 1)]).unwrap();
            let rep =
                knots::compare_connection(&pairs, &Partition::new(vec![2, 1]), 12).unwrap();
            println!(
                "compare (2,1) x (2,1): {:?} monomial {:?}",
                t0.elapsed(),
                rep.monomial
            );
        }
        "hall6" => {
            let t0 = Instant::now();
            let a = hallrep::u_op(2, 2, false).unwrap();
            let b = hallrep::u_op(3, 3, false).unwrap();
            let c = a.commutator(&b);
            for size in 0..=6u32 {
                for lambda in skeinhall::partitions::partitions_of(size) {
                    let f = SymFunc::basis_element(Basis::Macdonald, lambda.clone());
                    let img = hallrep::apply_op(&c, &f, 14).unwrap();
                    assert!(skeinhall::symfunc::sym_eq(
                        &img,
                        &SymFunc::zero(Basis::Macdonald),
                        14
                    )
                    .unwrap());
                }
                println!(
                    "  ray (1,1) [u2,u3] zero through inputs of degree {size}: {:?}",
                    t0.elapsed()
                );
            }
        }
        "trefoil" => {
            let t0 = Instant::now();
            let pairs = knots::validate_pairs(&[(2, 3)]).unwrap();
            let _ = skeinmod::j_h(&pairs, &Partition::new(vec![1]), 12).unwrap();
            println!("jh trefoil: {:?}", t0.elapsed());
        }
        _ => eprintln!("unknown mode"),
    }
}
