//! Dehn twists acting on the homology of a genus-2 surface.

use monodromy::mcg::{sp_word, standard_chain, verify_relation, SpMatrix};

fn main() -> monodromy::error::Result<()> {
    let chain = standard_chain(2)?;
    println!("chain classes: {:?}", chain.classes());
    println!("τ1 τ2 τ1 = τ2 τ1 τ2: {}", verify_relation(&[1, 2, 1], &[2, 1, 2], &chain)?);
    println!("τ1 τ3 = τ3 τ1: {}", verify_relation(&[1, 3], &[3, 1], &chain)?);
    println!("τ1 τ2 = τ2 τ1: {}", verify_relation(&[1, 2], &[2, 1], &chain)?);

    let word: Vec<i32> = (1..=5).collect::<Vec<_>>().repeat(6);
    println!("(τ1⋯τ5)^6 acts trivially: {}", sp_word(&word, &chain)?.is_identity());
    let hyper: Vec<i32> = (1..=5).chain((1..=5).rev()).collect();
    let i = sp_word(&hyper, &chain)?;
    println!("hyperelliptic involution:\n{i}");
    println!("equals -I: {}", i == SpMatrix::identity(2).neg());
    Ok(())
}
