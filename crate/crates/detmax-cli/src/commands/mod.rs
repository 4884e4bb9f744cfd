pub mod bench;
pub mod coreset;
pub mod oracle;
pub mod pipeline;
pub mod verify;
