use std::fmt::Display;

use clap::ValueEnum;
use serde::Serialize;

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

/// Pretty JSON on stdout with a trailing newline.
pub fn print_json<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string_pretty(value).expect("reports serialize"));
}

/// Reports an error on stderr and passes the exit code through.
pub fn fail(code: u8, msg: impl Display) -> u8 {
    eprintln!("error: {msg}");
    code
}

pub fn join<T: Display>(items: &[T], sep: &str) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join(sep)
}
