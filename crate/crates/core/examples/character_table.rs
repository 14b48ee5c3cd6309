//! Character table of `S_k` by the Murnaghan-Nakayama rule.
//!
//! cargo run --example character_table -- 5

use lieavg::symgroup::table;

fn main() -> lieavg::Result<()> {
    let k: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(5);
    let t = table(k)?;
    let head: Vec<String> = t.classes.iter().map(|c| format!("{:>11}", c.to_string())).collect();
    println!("{:>11} {}", "", head.join(""));
    for (label, row) in t.labels.iter().zip(&t.values) {
        let cells: Vec<String> = row.iter().map(|v| format!("{:>11}", v.to_string())).collect();
        println!("{:>11} {}", label.to_string(), cells.join(""));
    }
    Ok(())
}
