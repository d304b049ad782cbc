//! Bundled example inputs, compiled into the binary from the data files at
//! the repository root so every subcommand can run without external files.

use crate::boundary::PeripheralAssignment;
use crate::cog::ComplexOfGroups;
use crate::error::{Error, Result};
use crate::io::{self, CuspedJson};

pub const GENUS2_COG: &str = include_str!("../../../data/genus2.cog.json");
pub const GENUS2_ASSIGN: &str = include_str!("../../../data/genus2.assign.json");
pub const AMALGAM_4_2_6_COG: &str = include_str!("../../../data/amalgam-4-2-6.cog.json");
pub const THETA_FREE_COG: &str = include_str!("../../../data/theta-free.cog.json");
pub const ZZ_HOROBALL_CUSPED: &str = include_str!("../../../data/zz-horoball.cusped.json");

pub const NAMES: &[&str] = &["genus2", "amalgam-4-2-6", "theta-free", "zz-horoball"];

pub fn cog(name: &str) -> Result<ComplexOfGroups> {
    match name {
        "genus2" => io::cog_from_json_str(GENUS2_COG),
        "amalgam-4-2-6" => io::cog_from_json_str(AMALGAM_4_2_6_COG),
        "theta-free" => io::cog_from_json_str(THETA_FREE_COG),
        _ => Err(Error::Invalid(format!(
            "no bundled complex of groups named `{name}`"
        ))),
    }
}

pub fn assignment(name: &str) -> Result<PeripheralAssignment> {
    match name {
        "genus2" => io::assignment_from_json_str(GENUS2_ASSIGN),
        _ => Err(Error::Invalid(format!(
            "no bundled peripheral assignment named `{name}`"
        ))),
    }
}

pub fn cusped(name: &str) -> Result<CuspedJson> {
    match name {
        "zz-horoball" => io::cusped_from_json_str(ZZ_HOROBALL_CUSPED),
        _ => Err(Error::Invalid(format!(
            "no bundled cusped-space spec named `{name}`"
        ))),
    }
}
