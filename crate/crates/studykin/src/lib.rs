//! Operational shell around `studykin-core`: shared request handlers, a
//! file-backed scene store and the HTTP service.

pub mod api;
pub mod http;
pub mod store;
