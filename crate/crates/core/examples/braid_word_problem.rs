//! Decide equality in braid groups and inspect normal forms.

use monodromy::braid::{artin_action, braid_equal, braid_perm, full_twist, is_central, left_normal_form, BraidWord};

fn main() -> monodromy::error::Result<()> {
    let b = |d: usize, l: &[i32]| BraidWord::new(d, l.to_vec());
    let lhs = b(4, &[1, 2, 1, 3])?;
    let rhs = b(4, &[2, 1, 2, 3])?;
    println!("{lhs} = {rhs}: {}", braid_equal(&lhs, &rhs)?);
    println!("X1 X3 = X3 X1: {}", braid_equal(&b(4, &[1, 3])?, &b(4, &[3, 1])?)?);
    println!("X1 X2 = X2 X1: {}", braid_equal(&b(4, &[1, 2])?, &b(4, &[2, 1])?)?);

    let twist = full_twist(4);
    println!("Δ² in B4 is {twist}, central: {}", is_central(&twist));
    let (power, factors) = left_normal_form(&twist);
    println!("normal form of Δ²: Δ^{power} with {} further factors", factors.len());

    let w = b(4, &[1, -2, 3, 3, 2, -1])?;
    let (power, factors) = left_normal_form(&w);
    let shown: Vec<String> = factors.iter().map(ToString::to_string).collect();
    println!("normal form of {w}: Δ^{power} · [{}]", shown.join(", "));
    println!("permutation {}", braid_perm(&w));
    let phi = artin_action(&w);
    for j in 1..=4 {
        println!("  x{j} ↦ {}", phi.image(j));
    }
    Ok(())
}
