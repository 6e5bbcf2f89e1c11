//! Writes the paths of p = 991 and p = 997 as CSV and prints their shape.
//!
//!     cargo run --example path_figure -- [out_dir]

use std::fs::File;
use std::io::BufWriter;
use std::path::PathBuf;

use legendre_paths::legendre_path::build_path;

fn main() -> legendre_paths::Result<()> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "target/figures".into()));
    std::fs::create_dir_all(&dir)?;
    for p in [991, 997] {
        let path = build_path(p)?;
        path.check_invariants()?;
        let file = dir.join(format!("path_{p}.csv"));
        path.write_csv(BufWriter::new(File::create(&file)?))?;
        let shape = if path.prime().residue_class() == 3 { "even" } else { "odd" };
        println!(
            "p = {p}: {shape} path, sup norm {:.4}, f(1/4) = {:.4}, written to {}",
            path.sup_norm(),
            path.eval(0.25)?,
            file.display()
        );
    }
    Ok(())
}
