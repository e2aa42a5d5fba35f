//! Build the fiber of a simple branched cover, compute its homology and lift
//! braids to symplectic matrices.

use monodromy::braid::BraidWord;
use monodromy::cover::{build_fiber_surface, check_compatibility, fiber_genus, surface_h1, FiberLift};
use monodromy::text::{parse_covering, parse_factorization};

fn main() -> monodromy::error::Result<()> {
    let f = parse_factorization(include_str!("../data/sextic.fact"))?;
    let theta = parse_covering(include_str!("../data/sextic.cov"))?;
    let report = check_compatibility(&theta, &f)?;
    println!("sextic with {} sheets: compatible={}", theta.sheets(), report.is_compatible());

    let surface = build_fiber_surface(&theta)?;
    println!(
        "fiber cell structure V={} E={} F={} χ={}",
        surface.vertex_count(),
        surface.edge_count(),
        surface.face_count(),
        surface.euler_characteristic()
    );
    let h = surface_h1(&surface)?;
    println!("genus {} and H1 of rank {}", fiber_genus(&theta)?, h.rank());

    let lift = FiberLift::new(&theta)?;
    for letters in [vec![1], vec![2], vec![1, 2, -1]] {
        let b = BraidWord::new(6, letters)?;
        println!("lift of {b}:\n{}", lift.lift(&b)?);
    }
    Ok(())
}
