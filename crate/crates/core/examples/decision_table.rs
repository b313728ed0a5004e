//! Print the full decision table of the seven-actor society.

use olfm::cli::{cmd_table, Format};
use olfm::scores::ScoreConfig;
use olfm::society::fixtures::seven_actor;

fn main() -> olfm::Result<()> {
    let report = cmd_table(&seven_actor(), &ScoreConfig::default(), Format::Tsv)?;
    print!("{}", report.stdout);
    Ok(())
}
