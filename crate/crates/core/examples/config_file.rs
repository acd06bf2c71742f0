//! Parses a flat TOML config, applies command-line style overrides and
//! prints the fully resolved configuration.
//!
//!     cargo run --example config_file -- [path.toml]

use cellsim::cli::{parse_config, ConfigFile, Overrides};

const SAMPLE: &str = r#"
seed = 42
ratio = "35:35"
policy = "fp"
gamma0 = 2.0
load_multiplier = 1.5
"#;

fn main() -> cellsim::Result<()> {
    let overrides = Overrides {
        gamma0: Some(4.0),
        ..Default::default()
    };
    let resolved = match std::env::args().nth(1) {
        Some(path) => parse_config(Some(path.as_ref()), &overrides)?,
        None => {
            let mut file = ConfigFile::parse(SAMPLE)?;
            file.apply(&overrides);
            file.resolve()?
        }
    };
    print!("{}", resolved.echo());
    let sim = resolved.to_sim_config()?;
    println!("# {} cells, {:.0} expected arrivals", sim.num_cells(), sim.expected_arrivals());

    match ConfigFile::parse("ratio = \"20:50\"\n").and_then(|f| f.resolve()) {
        Ok(_) => unreachable!(),
        Err(e) => println!("# rejected: {e}"),
    }
    Ok(())
}
