//! Writes b-files for the three sequences from the product forms, which are
//! independent of the recurrences in `counts`.
//!
//! Usage: `cargo run --release --example write_bfiles -- <dir> [n_max]`

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use tree_asymptotics::counts::product_form_oracle_with_bound;
use tree_asymptotics::Variety;

fn main() -> std::io::Result<()> {
    let mut args = std::env::args().skip(1);
    let dir = PathBuf::from(args.next().unwrap_or_else(|| ".".into()));
    let n_max: usize = args.next().map(|s| s.parse().expect("n_max must be an integer")).unwrap_or(500);
    fs::create_dir_all(&dir)?;
    for variety in Variety::ALL {
        let seq = product_form_oracle_with_bound(variety, n_max, n_max).expect("bound raised to n_max");
        let first = if variety == Variety::Hierarchy { 1 } else { 0 };
        let id = variety.oeis_id();
        let path = dir.join(format!("b{}.txt", &id[1..]));
        let mut out = fs::File::create(&path)?;
        writeln!(out, "# {id}, n = {first}..{n_max}")?;
        for (n, v) in seq.values().iter().enumerate().skip(first) {
            writeln!(out, "{n} {v}")?;
        }
        println!("wrote {}", path.display());
    }
    Ok(())
}
