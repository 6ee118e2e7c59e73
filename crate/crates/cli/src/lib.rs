//! Command-line front end and census builder for Lorenz links.

pub mod app;
pub mod atlas;
pub mod error;
pub mod output;
pub mod query;
pub mod report;
