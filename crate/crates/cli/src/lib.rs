//! Command implementations behind the `h1loc` binary. Each command returns
//! its exit code and output instead of printing, so tests can call them
//! directly.

pub mod spec;

use std::fs;
use std::path::Path;

use serde_json::{json, Value};

use h1loc_core::cohomology::{GModule, Limits};
use h1loc_core::matgroup::MatrixGroup;
use h1loc_core::modring::Modulus;
use h1loc_core::torus::{self, Check, CounterexampleInput, VerificationReport, REPORT_SCHEMA};
use h1loc_core::Error;

pub use spec::{GroupSpecFile, IntegerGroupSpecFile, ModulusSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy)]
pub struct Options {
    pub cap: usize,
    pub jobs: usize,
    pub format: Format,
}

impl Options {
    fn limits(&self) -> Limits {
        Limits {
            max_group_order: self.cap,
            ..Limits::default()
        }
    }
}

impl Default for Options {
    fn default() -> Self {
        Options {
            cap: Limits::default().max_group_order,
            jobs: 1,
            format: Format::Json,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn error(e: &Error) -> Self {
        Outcome {
            code: if e.is_resource() {
                EXIT_RESOURCE
            } else {
                EXIT_INPUT
            },
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        }
    }
}

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))
}

fn emit_report(report: &VerificationReport, format: Format) -> Outcome {
    let stdout = match format {
        Format::Json => report.to_json() + "\n",
        Format::Text => report.to_text(),
    };
    Outcome {
        code: if report.verdict {
            EXIT_OK
        } else {
            EXIT_CHECK_FAILED
        },
        stdout,
        stderr: String::new(),
    }
}

fn emit_value(value: &Value, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(value).expect("value serializes") + "\n",
        Format::Text => {
            let mut out = String::new();
            if let Value::Object(map) = value {
                for (k, v) in map {
                    out.push_str(&format!("{k}: {v}\n"));
                }
            }
            out
        }
    }
}

fn run(f: impl FnOnce() -> Result<Outcome, Error>) -> Outcome {
    f().unwrap_or_else(|e| Outcome::error(&e))
}

pub fn verify_counterexample(p: i64, opts: &Options) -> Outcome {
    run(|| {
        torus::require_within_cap(p, opts.cap)?;
        let input = CounterexampleInput::standard(p)?;
        let report = torus::verify_counterexample(&input, &opts.limits(), opts.jobs)?;
        Ok(emit_report(&report, opts.format))
    })
}

fn cohomology(path: &Path, opts: &Options, local: bool, basis: bool) -> Outcome {
    run(|| {
        let spec = GroupSpecFile::parse(&read(path)?)?;
        let group = spec.group(opts.cap)?;
        let module = GModule::natural(&group);
        let result = if local {
            module.h1_loc(&opts.limits())?
        } else {
            module.h1(&opts.limits())?
        };
        let mut out = json!({
            "schema": REPORT_SCHEMA,
            "command": if local { "h1loc" } else { "h1" },
            "label": spec.label,
            "group_order": group.order(),
            "invariant_factors": result.invariant_factors(),
            "order_exponent": result.order_exponent(),
        });
        if basis {
            out["basis"] = serde_json::to_value(result.basis()).expect("cocycles serialize");
        }
        Ok(Outcome::ok(emit_value(&out, opts.format)))
    })
}

pub fn h1(path: &Path, opts: &Options, basis: bool) -> Outcome {
    cohomology(path, opts, false, basis)
}

pub fn h1loc(path: &Path, opts: &Options, basis: bool) -> Outcome {
    cohomology(path, opts, true, basis)
}

fn matrices(group: &MatrixGroup) -> Value {
    group
        .generators()
        .iter()
        .map(|g| g.to_rows())
        .collect::<Vec<_>>()
        .into()
}

pub fn sylow(path: &Path, opts: &Options) -> Outcome {
    run(|| {
        let spec = GroupSpecFile::parse(&read(path)?)?;
        let group = spec.group(opts.cap)?;
        let (sylow_gens, sylow_elems) = group.sylow_indices()?;
        let sylow = group.sylow_p(opts.cap)?;
        let mut reductions = Vec::new();
        for j in 1..group.modulus().n() {
            let red = group.reduce_mod(j, opts.cap)?;
            let inside = red
                .kernel
                .iter()
                .all(|k| sylow_elems.binary_search(k).is_ok());
            reductions.push(json!({
                "j": j,
                "image_order": red.image.order(),
                "kernel_order": red.kernel.len(),
                "kernel_inside_sylow": inside,
            }));
        }
        let out = json!({
            "schema": REPORT_SCHEMA,
            "command": "sylow",
            "label": spec.label,
            "p": group.modulus().p(),
            "group_order": group.order(),
            "sylow": {
                "order": sylow.order(),
                "generator_elements": sylow_gens,
                "generators": matrices(&sylow),
            },
            "reductions": reductions,
        });
        Ok(Outcome::ok(emit_value(&out, opts.format)))
    })
}

pub fn check_injectivity(path: &Path, p: i64, opts: &Options) -> Outcome {
    run(|| {
        let modulus = Modulus::new(p, 1)?;
        let spec = IntegerGroupSpecFile::parse(&read(path)?)?;
        let group = spec.group(opts.cap)?;
        let image = group.reduce(modulus, opts.cap)?;
        let mut report = VerificationReport::new("check-injectivity")
            .parameter("p", p)
            .parameter("dimension", spec.dimension);
        let mut c = Check::new("orders_equal")
            .value("integer_group_order", group.order())
            .value("image_order", image.order());
        c.require(group.order() == image.order());
        report.push(c);
        Ok(emit_report(&report, opts.format))
    })
}
