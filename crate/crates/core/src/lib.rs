pub mod algebra;
pub mod engine;
pub mod closed_form;
pub mod oracle;
pub mod par;
pub mod analysis;
pub mod cli;
