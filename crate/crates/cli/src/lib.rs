//! Command-line front end and JSON-over-HTTP service for the `clusterchar`
//! workbench.

pub mod app;
pub mod server;
