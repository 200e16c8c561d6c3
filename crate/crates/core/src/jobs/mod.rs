//! Declarative job files, report generation, report diffs and the disk cache.
//!
//! A job file is TOML:
//!
//! ```toml
//! compute = ["all"]          # any of jacobi, koszul, homs, tft, all
//! degree_bound = 6           # optional, Hom cohomology (default per pair)
//! koszul_bound = 12          # optional
//!
//! [lg]
//! variables = ["x"]
//! W = "x^3"
//!
//! [[brane]]
//! name = "a"
//! koszul = [["x", "x^2"]]
//!
//! [[brane]]
//! name = "b"
//! rank0 = 1
//! rank1 = 1
//! d01 = [["x^2"]]
//! d10 = [["x"]]
//!
//! [normalization]
//! boundary = "1"             # c_d, default 1/d!
//! ```
//!
//! Reports are pretty-printed JSON carrying `schema_version`; everything but
//! the `timing` object is deterministic.

mod cache;
mod report;
mod spec;

pub use cache::{default_cache_dir, DiskCache, CACHE_DIR_ENV};
pub use report::{diff_reports, run_job, DiffEntry, Report, SCHEMA_VERSION};
pub use spec::{BraneSource, BraneSpec, Computation, JobSpec};
