use std::io::Write;

use rumor_core::ScenarioConfig;

use crate::failure::Failure;
use crate::output::write_file_atomic;
use crate::DumpArgs;

pub fn dump_scenario(a: DumpArgs) -> Result<(), Failure> {
    if a.list {
        for name in ScenarioConfig::BUILTIN_NAMES {
            println!("{name}");
        }
        return Ok(());
    }
    let Some(name) = a.name else {
        return Err(Failure::config("pass --name <scenario> or --list"));
    };
    let config = ScenarioConfig::builtin(&name)?;
    let text = config.to_toml()?;
    match a.out {
        Some(p) if p.as_os_str() != "-" => {
            write_file_atomic(&p, &text)?;
            eprintln!("wrote {}", p.display());
        }
        _ => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}
