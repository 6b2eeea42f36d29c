//! Single-machine scheduling of jobs whose sizes are exponential with a
//! mean that depends on an unknown job type.
//!
//! The crate provides the realization-aware optimum, the clairvoyant
//! type-order benchmark, round robin and several learning policies, an
//! exact event-driven engine to run them, closed-form expected costs and
//! bounds, and a seeded parallel experiment harness.

/// `Display` and `FromStr` for a fieldless enum from a fixed name table.
macro_rules! named_variants {
    ($ty:ty { $($variant:ident => $name:literal),+ }) => {
        impl ::std::fmt::Display for $ty {
            fn fmt(&self, f: &mut ::std::fmt::Formatter<'_>) -> ::std::fmt::Result {
                f.write_str(match self { $(Self::$variant => $name),+ })
            }
        }

        impl ::std::str::FromStr for $ty {
            type Err = String;

            fn from_str(s: &str) -> Result<Self, Self::Err> {
                match s {
                    $($name => Ok(Self::$variant),)+
                    other => Err(format!(
                        "unknown value {other:?}, expected one of: {}",
                        [$($name),+].join(", ")
                    )),
                }
            }
        }
    };
}

pub mod model;
pub mod stats;
pub mod engine;
pub mod policies;
pub mod analytics;
pub mod harness;
pub mod cli;
