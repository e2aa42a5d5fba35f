//! Smith normal form with unimodular certificates, and cokernels.

use monodromy::zlinalg::{cokernel, smith_normal_form, IntMatrix};

fn main() -> monodromy::error::Result<()> {
    let a = IntMatrix::from_rows(&[[2, 4, 4], [-6, 6, 12], [10, -4, -16]])?;
    let s = smith_normal_form(&a);
    println!("A =\n{a}\nD =\n{}\nU =\n{}\nV =\n{}", s.d, s.u, s.v);
    println!("U·A·V = D: {}", s.u.mul(&a)?.mul(&s.v)? == s.d);
    println!("coker A = {}", cokernel(&a));
    let presentation_of_z3 = IntMatrix::from_rows(&[[3]])?;
    println!("coker [3] = {}", cokernel(&presentation_of_z3));
    Ok(())
}
