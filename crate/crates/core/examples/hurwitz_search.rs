//! Scramble a factorization with Hurwitz moves and recover the moves by search.

use monodromy::factor::{
    apply_move, hurwitz_equivalent, hurwitz_move, Direction, SearchOptions, SearchOutcome,
};
use monodromy::text::parse_factorization;

fn main() -> monodromy::error::Result<()> {
    let lantern = parse_factorization(include_str!("../data/lantern.fact"))?;
    let mut scrambled = lantern.clone();
    for (p, dir) in [(0, Direction::Forward), (1, Direction::Forward), (0, Direction::Backward), (1, Direction::Forward)] {
        scrambled = hurwitz_move(&scrambled, p, dir)?;
    }
    println!("scrambled lantern:\n{scrambled}");

    match hurwitz_equivalent(&scrambled, &lantern, &SearchOptions::default())? {
        SearchOutcome::Found(path) => {
            let names: Vec<String> = path.iter().map(ToString::to_string).collect();
            println!("recovered in {} moves: {}", path.len(), names.join(" "));
            let end = path.iter().try_fold(scrambled.clone(), |f, m| apply_move(&f, m))?;
            println!("path reaches the lantern factorwise: {}", end.factorwise_equal(&lantern)?);
        }
        other => println!("unexpected: {other:?}"),
    }

    let conic = parse_factorization(include_str!("../data/conic.fact"))?;
    let lines = parse_factorization(include_str!("../data/two_lines.fact"))?;
    if let SearchOutcome::Refuted(why) = hurwitz_equivalent(&conic, &lines, &SearchOptions::default())? {
        println!("conic vs two lines refuted by {why}");
    }
    Ok(())
}
