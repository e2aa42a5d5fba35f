//! Fundamental groups of plane curve complements from their factorizations.

use monodromy::text::{parse_factorization, parse_target};
use monodromy::vankampen::{abelianization, count_homs, presentation, simplify, HomOptions};

fn main() -> monodromy::error::Result<()> {
    let s3 = parse_target("S3")?;
    for (name, text) in [
        ("conic", include_str!("../data/conic.fact")),
        ("three lines", include_str!("../data/lantern.fact")),
        ("cuspidal cubic", include_str!("../data/cusp_cubic.fact")),
    ] {
        let f = parse_factorization(text)?;
        let affine = presentation(&f, false)?;
        let projective = presentation(&f, true)?;
        let homs = count_homs(&projective, &s3, &HomOptions::default())?;
        println!(
            "{name}: affine H1={} projective H1={} homs to S3 = {}",
            abelianization(&affine),
            abelianization(&projective),
            homs.count
        );
        println!("  simplified projective presentation: {}", simplify(&projective).to_string().replace('\n', "; "));
    }
    Ok(())
}
