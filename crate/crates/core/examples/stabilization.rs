//! Add the commutators of disjointly labelled geometric generators and check
//! the presentation against its covering data.

use monodromy::text::{parse_covering, parse_factorization};
use monodromy::vankampen::{abelianization, presentation, stabilized, structure_check};

fn main() -> monodromy::error::Result<()> {
    let f = parse_factorization(include_str!("../data/sextic.fact"))?;
    let theta = parse_covering(include_str!("../data/sextic.cov"))?;
    let p = presentation(&f, true)?;
    println!("sextic: {} generators, {} relators, H1={}", p.generators(), p.relators().len(), abelianization(&p));
    for bound in 0..=1 {
        let s = stabilized(&p, &theta, bound)?;
        println!(
            "conjugator bound {bound}: {} commutators added, exact={}, H1={}",
            s.added_relators,
            s.exact,
            abelianization(&s.presentation)
        );
    }
    let report = structure_check(&p, &theta, Some(&[[2, 0], [0, 2]]))?;
    println!(
        "relators in ker θ: {}, linking well defined: {}, parity consistent: {}",
        report.relators_in_kernel(),
        report.linking_well_defined,
        report.parity_consistent
    );
    if let Some(index) = report.image_index() {
        println!("image index in S_N × Z_d: {index}");
    }
    if let Some(q) = &report.lambda_quotient {
        println!("(Z²/Λ)^(N-1) = {q}");
    }
    Ok(())
}
