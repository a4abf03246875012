//! Random BST heights grow like 4.311 ln n, and rarely exceed 6.3619 ln n.

use secretary_rank::analysis::{height_tail, DEVROYE_TAIL_K, REED_ALPHA};

fn main() {
    println!("{:>7} {:>10} {:>10} {:>6} {:>10}", "n", "mean H", "H / ln n", "max", "tail");
    for n in [100, 1_000, 10_000, 100_000] {
        let trials = if n >= 100_000 { 200 } else { 2000 };
        let t = height_tail(n, trials, DEVROYE_TAIL_K, 1);
        println!(
            "{n:>7} {:>10.2} {:>10.3} {:>6} {:>10.5}",
            t.mean_height,
            t.mean_height / (n as f64).ln(),
            t.max_height,
            t.probability
        );
    }
    println!("limit of H / ln n: {REED_ALPHA}");
}
