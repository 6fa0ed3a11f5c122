//! Library surface of the command-line front end; exists so the run
//! configuration can be exercised from tests and fuzz targets.

pub mod config {
    use serde::{Deserialize, Serialize};

    /// Resolved run configuration; serializes to JSON and parses back
    /// losslessly so runs can be recorded and replayed.
    #[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
    pub struct RunConfig {
        pub command: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        pub m: Option<u32>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        pub k: Option<u32>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        pub kmax: Option<u32>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        pub modmax: Option<u64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        pub r: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        pub kappa: Option<i64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        pub mu: Option<i64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        pub word: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        pub family: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        pub chi: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        pub psi: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        pub suite: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        pub what: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        pub n: Option<u32>,
        pub precision: usize,
        pub tolerance: f64,
        pub workers: usize,
        pub seed: u64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        pub out: Option<String>,
    }

    #[cfg(test)]
    mod tests {
        use super::*;

        #[test]
        fn config_round_trips_through_json() {
            let cfg = RunConfig {
                command: "scan".into(),
                m: None,
                k: None,
                kmax: Some(20),
                modmax: Some(30),
                r: None,
                kappa: None,
                mu: None,
                word: None,
                family: Some("R-both-nonprincipal".into()),
                chi: None,
                psi: None,
                suite: None,
                what: None,
                n: None,
                precision: 128,
                tolerance: 2f64.powi(-32),
                workers: 4,
                seed: 42,
                out: None,
            };
            let json = serde_json::to_string(&cfg).unwrap();
            let back: RunConfig = serde_json::from_str(&json).unwrap();
            assert_eq!(cfg, back);
            assert_eq!(json, serde_json::to_string(&back).unwrap());
        }
    }
}
