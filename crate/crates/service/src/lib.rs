//! HTTP service for the human evaluation studies: serves sentence and
//! frame tasks, records judgments in a replayable journal, applies gold
//! checks and hands out verifiable completion codes.

pub mod code;
pub mod http;
pub mod journal;
pub mod store;

pub use http::{router, serve, SharedStore};
pub use journal::{Event, Journal, JournalError};
pub use store::{Ack, ServiceError, SessionInfo, Store, Submission, Task};
