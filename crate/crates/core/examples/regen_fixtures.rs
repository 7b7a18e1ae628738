//! Rewrites the bundled polytope files under `fixtures/`.
//!
//! ```text
//! cargo run -p quantvol --example regen_fixtures
//! ```

use std::path::Path;

use quantvol::harness::fixtures::bundled_files;

fn main() -> std::io::Result<()> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    std::fs::create_dir_all(&dir)?;
    for (name, contents) in bundled_files() {
        let path = dir.join(name);
        std::fs::write(&path, contents)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}
