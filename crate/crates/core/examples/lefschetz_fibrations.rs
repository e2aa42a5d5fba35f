//! Euler characteristics, homology and fiber sums of genus-2 Lefschetz
//! fibrations given by vanishing cycles.

use monodromy::lefschetz::{fiber_sum, invariants, FibSumTwist};
use monodromy::text::{parse_lfibration, parse_twist};

fn main() -> monodromy::error::Result<()> {
    let f0 = parse_lfibration(include_str!("../data/f0.lf"))?;
    let f1 = parse_lfibration(include_str!("../data/f1.lf"))?;
    for (name, l) in [("f0", &f0), ("f1", &f1)] {
        let i = invariants(l);
        println!("{name}: m={} χ={} H1={}", i.critical_points, i.euler_characteristic, i.h1);
    }
    let three = fiber_sum(&fiber_sum(&f0, &f0, None)?, &f0, None)?;
    let two = fiber_sum(&f1, &f1, None)?;
    for (name, l) in [("f0 # f0 # f0", &three), ("f1 # f1", &two)] {
        let i = invariants(l);
        println!("{name}: m={} χ={} H1={}", i.critical_points, i.euler_characteristic, i.h1);
    }
    let twist: FibSumTwist = parse_twist(include_str!("../data/swap.tw"))?;
    let twisted = fiber_sum(&f1, &f1, Some(&twist))?;
    let i = invariants(&twisted);
    println!("f1 # f1 twisted by the handle swap: m={} χ={} H1={}", i.critical_points, i.euler_characteristic, i.h1);
    Ok(())
}
