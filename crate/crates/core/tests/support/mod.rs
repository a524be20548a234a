pub mod contexts;
pub mod oracle;
pub mod suites;
