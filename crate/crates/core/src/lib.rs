pub mod cfrege;
pub mod encoder;
pub mod experiment;
pub mod formula;
pub mod oracle;
pub mod proofgen;
pub mod resolution;
