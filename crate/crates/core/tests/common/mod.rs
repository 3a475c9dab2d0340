pub mod chains;
pub mod oracle;
