//! Kendall tau and Spearman footrule of a placement, and the bound
//! K <= F <= 2K between them.

use secretary_rank::metrics::{count_inversions, count_inversions_bruteforce, footrule, PlacementMap};

fn main() -> secretary_rank::Result<()> {
    // positions[i] is where the element of true rank i + 1 was placed
    let map = PlacementMap::new(vec![2, 1, 4, 3, 6, 5], 6)?;
    let k = count_inversions(&map);
    let f = footrule(&map)?;
    println!("adjacent swaps: K = {k}, F = {f}");

    let reversed = PlacementMap::new((1..=6).rev().collect(), 6)?;
    println!("reversal: K = {}, F = {}", count_inversions(&reversed), footrule(&reversed)?);

    // sparse placements: only K is defined
    let sparse = PlacementMap::new(vec![10, 3, 40, 22], 50)?;
    println!(
        "sparse: K = {} (brute force {}), footrule -> {:?}",
        count_inversions(&sparse),
        count_inversions_bruteforce(&sparse),
        footrule(&sparse).err()
    );
    Ok(())
}
