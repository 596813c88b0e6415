//! Test-only oracles and generators. Nothing here depends on the main
//! library, so each oracle is an independent route to the value it checks.

pub mod generate;
pub mod oracle;
