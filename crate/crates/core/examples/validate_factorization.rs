//! Parse braid monodromy factorizations and check that they multiply to Δ².

use monodromy::factor::validate;
use monodromy::text::parse_factorization;

fn main() -> monodromy::error::Result<()> {
    let catalog = [
        ("conic", include_str!("../data/conic.fact")),
        ("three lines", include_str!("../data/lantern.fact")),
        ("cuspidal cubic", include_str!("../data/cusp_cubic.fact")),
        ("smooth sextic", include_str!("../data/sextic.fact")),
    ];
    for (name, text) in catalog {
        let f = parse_factorization(text)?;
        let r = validate(&f);
        println!(
            "{name:15} d={} m={:2} valid={} tangencies={} nodes={} cusps={} exponent sum {}",
            r.degree,
            r.factor_count,
            r.is_valid(),
            r.tangencies,
            r.nodes(),
            r.cusps,
            r.exponent_sum
        );
    }
    // Dropping a factor breaks the product.
    let conic = parse_factorization(include_str!("../data/conic.fact"))?;
    let half = monodromy::factor::Factorization::new(2, conic.factors()[..1].to_vec())?;
    println!("one tangency alone valid={}", validate(&half).is_valid());
    Ok(())
}
