//! Report envelope shared by every command, and the error-to-exit-code contract.

use std::time::Duration;

use hochserre_core::Error as CoreError;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::commands::{OracleCheck, RunOptions};
use crate::input::{InputError, InputFile};

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_NAME: &str = "hochserre";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Serialize)]
pub struct CommandEcho {
    name: String,
    file: String,
    args: Map<String, Value>,
}

impl CommandEcho {
    pub fn new(name: &str, file: String, args: &[(&str, i64)]) -> Self {
        Self {
            name: name.to_string(),
            file,
            args: args.iter().map(|(k, v)| (k.to_string(), json!(v))).collect(),
        }
    }
}

#[derive(Debug, Serialize)]
struct Tool {
    name: &'static str,
    version: &'static str,
}

const TOOL: Tool = Tool {
    name: TOOL_NAME,
    version: TOOL_VERSION,
};

#[derive(Debug, Serialize)]
struct InputEcho {
    vars: Vec<String>,
    weights: Vec<i64>,
    degree: i64,
    omega: String,
    omega_canonical: String,
    options: EffectiveOptions,
}

#[derive(Debug, Serialize)]
struct EffectiveOptions {
    oracle: bool,
    assume_restriction_action: bool,
    modulus: Option<u64>,
}

#[derive(Debug, Serialize)]
struct Timing {
    elapsed_ms: u128,
}

#[derive(Debug, Serialize)]
struct Envelope<'a> {
    schema_version: u32,
    tool: &'a Tool,
    command: &'a CommandEcho,
    input: &'a InputEcho,
    warnings: &'a [String],
    result: &'a Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    timing: Option<Timing>,
}

pub struct Report {
    command: CommandEcho,
    input: InputEcho,
    warnings: Vec<String>,
    result: Value,
    text: String,
    elapsed: Option<Duration>,
}

impl Report {
    pub fn new(
        command: CommandEcho,
        input: &InputFile,
        omega_canonical: &str,
        opts: &RunOptions,
        warnings: &[String],
    ) -> Self {
        let modulus = match opts.rank_method {
            hochserre_core::RankMethod::Exact => None,
            hochserre_core::RankMethod::Modular(p) => Some(p),
        };
        Self {
            command,
            input: InputEcho {
                vars: input.vars.clone(),
                weights: input.weights.clone(),
                degree: input.degree,
                omega: input.omega.clone(),
                omega_canonical: omega_canonical.to_string(),
                options: EffectiveOptions {
                    oracle: opts.oracle,
                    assume_restriction_action: opts.multiply.assume_restriction_action,
                    modulus,
                },
            },
            warnings: warnings.to_vec(),
            result: Value::Null,
            text: String::new(),
            elapsed: None,
        }
    }

    pub fn set_result<T: Serialize>(&mut self, result: &T, text: String) {
        self.result = serde_json::to_value(result).expect("results serialize");
        self.text = text;
    }

    pub fn set_timing(&mut self, elapsed: Option<Duration>) {
        self.elapsed = elapsed;
    }

    pub fn to_json(&self) -> String {
        let env = Envelope {
            schema_version: SCHEMA_VERSION,
            tool: &TOOL,
            command: &self.command,
            input: &self.input,
            warnings: &self.warnings,
            result: &self.result,
            timing: self.elapsed.map(|e| Timing {
                elapsed_ms: e.as_millis(),
            }),
        };
        serde_json::to_string_pretty(&env).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "{} {}  {}  omega = {}\n",
            TOOL_NAME, TOOL_VERSION, self.command.name, self.input.omega_canonical
        );
        for w in &self.warnings {
            out.push_str(&format!("warning: {w}\n"));
        }
        out.push('\n');
        out.push_str(&self.text);
        if let Some(e) = self.elapsed {
            out.push_str(&format!("\nelapsed {} ms\n", e.as_millis()));
        }
        out
    }
}

/// A run that ended without a result.
#[derive(Debug)]
pub enum Failure {
    Input(InputError),
    Oracle(String),
}

impl Failure {
    pub fn invalid(message: String) -> Self {
        Failure::Input(InputError::Invalid(message))
    }

    pub fn oracle(check: &OracleCheck) -> Self {
        Failure::Oracle(format!(
            "sector {}: Hilbert oracle gives {:?} but the graded pieces have dimensions {:?}",
            check.sector, check.expected, check.computed
        ))
    }

    /// 2 input or validation, 3 non-isolated singularity, 4 indeterminate composition,
    /// 1 internal inconsistency.
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Input(InputError::Core(CoreError::NonIsolatedSingularity { .. })) => 3,
            Failure::Input(InputError::Core(CoreError::IndeterminateComposition { .. })) => 4,
            Failure::Input(_) => 2,
            Failure::Oracle(_) => 1,
        }
    }

    pub fn message(&self) -> String {
        match self {
            Failure::Input(e) => e.to_string(),
            Failure::Oracle(m) => format!("internal inconsistency: {m}"),
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            Failure::Input(InputError::Io(_)) => "Io",
            Failure::Input(InputError::Toml(_)) => "MalformedInput",
            Failure::Input(InputError::Invalid(_)) => "InvalidInput",
            Failure::Input(InputError::Core(e)) => match e {
                CoreError::Syntax { .. } => "Syntax",
                CoreError::UnknownVariable { .. } => "UnknownVariable",
                CoreError::ZeroDenominator { .. } => "ZeroDenominator",
                CoreError::InvalidVarSystem(_) => "InvalidVarSystem",
                CoreError::NotQuasiHomogeneous { .. } => "NotQuasiHomogeneous",
                CoreError::ZeroPolynomial => "ZeroPolynomial",
                CoreError::DegreeMismatch { .. } => "DegreeMismatch",
                CoreError::NonPolynomialSeries(_) => "NonPolynomialSeries",
                CoreError::NonIsolatedSingularity { .. } => "NonIsolatedSingularity",
                CoreError::IndeterminateComposition { .. } => "IndeterminateComposition",
                CoreError::InvalidMatrix(_) => "InvalidMatrix",
                CoreError::InvalidElement(_) => "InvalidElement",
            },
            Failure::Oracle(_) => "OracleMismatch",
        }
    }

    fn details(&self) -> Value {
        match self {
            Failure::Input(InputError::Core(CoreError::NonIsolatedSingularity {
                sector,
                degree,
                dim,
                socle,
            })) => json!({ "sector": sector.unwrap_or(0), "degree": degree, "dim": dim, "socle_degree": socle }),
            Failure::Input(InputError::Core(CoreError::IndeterminateComposition { terms })) => {
                json!({
                    "terms": terms
                        .iter()
                        .map(|t| json!({
                            "left_sector": t.left_sector,
                            "right_sector": t.right_sector,
                            "target_sector": t.target_sector,
                            "target_degree": t.target_degree,
                            "target_dim": t.target_dim,
                        }))
                        .collect::<Vec<_>>()
                })
            }
            Failure::Input(InputError::Core(CoreError::Syntax { offset, .. }))
            | Failure::Input(InputError::Core(CoreError::UnknownVariable { offset, .. }))
            | Failure::Input(InputError::Core(CoreError::ZeroDenominator { offset })) => {
                json!({ "offset": offset })
            }
            _ => json!({}),
        }
    }

    pub fn to_json(&self, command: CommandEcho) -> String {
        let body = json!({
            "schema_version": SCHEMA_VERSION,
            "tool": TOOL,
            "command": command,
            "error": {
                "kind": self.kind(),
                "exit_code": self.exit_code(),
                "message": self.message(),
                "details": self.details(),
            },
        });
        serde_json::to_string_pretty(&body).expect("error report serializes")
    }
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure::Input(e)
    }
}

impl From<CoreError> for Failure {
    fn from(e: CoreError) -> Self {
        Failure::Input(InputError::Core(e))
    }
}
