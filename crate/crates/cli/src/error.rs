use std::fmt;

use rho_planes::GeomError;
use serde_json::json;

/// Failure of a CLI run, mapped onto the process exit status.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Numerical { kind: &'static str, message: String },
    Io(String),
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Numerical { .. } | CliError::Io(_) => 3,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Numerical { kind, .. } => kind,
            CliError::Io(_) => "io",
        }
    }

    /// The error record written to stderr.
    pub fn to_json(&self) -> String {
        json!({
            "error": {
                "kind": self.kind(),
                "message": self.to_string(),
                "exit_code": self.exit_code(),
            }
        })
        .to_string()
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Io(m) => f.write_str(m),
            CliError::Numerical { message, .. } => f.write_str(message),
        }
    }
}

impl From<GeomError> for CliError {
    fn from(e: GeomError) -> Self {
        match e {
            GeomError::Config(_) | GeomError::Domain(_) | GeomError::Unsupported(_) => {
                CliError::Usage(e.to_string())
            }
            other => CliError::Numerical {
                kind: other.kind(),
                message: other.to_string(),
            },
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_follow_error_class() {
        assert_eq!(CliError::from(GeomError::Domain("x".into())).exit_code(), 2);
        assert_eq!(CliError::from(GeomError::Config("x".into())).exit_code(), 2);
        assert_eq!(
            CliError::from(GeomError::Numerical("x".into())).exit_code(),
            3
        );
        assert_eq!(
            CliError::from(GeomError::Degenerate("x".into())).exit_code(),
            3
        );
        let json: serde_json::Value =
            serde_json::from_str(&CliError::from(GeomError::Geometry("bad".into())).to_json())
                .unwrap();
        assert_eq!(json["error"]["kind"], "geometry");
        assert_eq!(json["error"]["exit_code"], 3);
    }
}
