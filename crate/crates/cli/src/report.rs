//! Per-graph benchmark records and their JSON and CSV encodings.

use std::io::Write;
use std::time::{Duration, Instant};

use serde_json::{json, Map, Value};
use zeta_kit_core::bounds::BoundReport;
use zeta_kit_core::degeneracy::zeta_profile;
use zeta_kit_core::greedy::{cheap_greedy, min_greedy, one_cheap_greedy, two_cheap_greedy};
use zeta_kit_core::oracle::{exact_alpha_k, is_in_family_f};
use zeta_kit_core::rational::{self, ceil_usize, to_f64};
use zeta_kit_core::{GreedyRun, Rational};

use crate::formats::GraphDocument;
use crate::SCHEMA;

pub fn exact(value: &Rational) -> Value {
    Value::String(value.to_string())
}

/// Six-decimal rendering, kept as a string so machine consumers never see a
/// float where an exact value is meant.
pub fn approx(value: &Rational) -> Value {
    Value::String(format!("{:.6}", to_f64(value)))
}

fn optional(value: Option<&Rational>, render: fn(&Rational) -> Value) -> Value {
    value.map_or(Value::Null, render)
}

/// `(exact, approx)` objects keyed by bound name.
pub fn bound_maps(bounds: &BoundReport) -> (Value, Value) {
    let mut exact_map = Map::new();
    let mut approx_map = Map::new();
    for (name, value) in bounds.entries() {
        exact_map.insert(name.into(), optional(value, exact));
        approx_map.insert(name.into(), optional(value, approx));
    }
    (Value::Object(exact_map), Value::Object(approx_map))
}

/// Vertex count limits for the oracles run by `bench`.
#[derive(Debug, Clone, Copy)]
pub struct OracleLimits {
    pub alpha0: usize,
    pub alpha_k: usize,
}

#[derive(Debug, Clone)]
pub struct GreedySummary {
    pub algorithm: &'static str,
    pub level: usize,
    pub size: usize,
    pub certificate: Rational,
    pub anomalies: usize,
}

impl From<&GreedyRun> for GreedySummary {
    fn from(run: &GreedyRun) -> Self {
        Self {
            algorithm: run.algorithm,
            level: run.level,
            size: run.chosen.len(),
            certificate: run.certificate.clone(),
            anomalies: run.anomalies.len(),
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct Timing {
    pub parse: Duration,
    pub zeta: Duration,
    pub bounds: Duration,
    pub greedy: Duration,
    pub oracle: Duration,
}

#[derive(Debug, Clone)]
pub struct Record {
    pub name: String,
    pub format: &'static str,
    pub n: usize,
    pub m: usize,
    pub zeta_min: usize,
    pub zeta_max: usize,
    pub zeta_mean: Rational,
    pub bounds: BoundReport,
    pub greedy: Vec<GreedySummary>,
    /// `α_0`, `α_1`, `α_2` where the graph is under the oracle limits.
    pub alpha: [Option<usize>; 3],
    pub family_f: bool,
    pub timing: Timing,
}

const GREEDY_ALGORITHMS: [&str; 4] = ["min", "cheap", "1cheap", "2cheap"];
const BOUND_NAMES: [&str; 13] = [
    "z1",
    "z2",
    "z3",
    "caro_wei",
    "turan_zeta",
    "strong_component",
    "strong_grouped",
    "caro_tuza_a1",
    "ch_a1",
    "ch_a2",
    "forest_z1",
    "forest_z2",
    "forest_z3",
];

impl Record {
    /// Runs the full pipeline on one parsed graph. Fails only when a
    /// cheap-set search finds nothing.
    pub fn compute(name: String, doc: &GraphDocument, parse: Duration, limits: OracleLimits) -> Result<Self, String> {
        let graph = &doc.graph;
        let n = graph.vertex_count();
        let mut timing = Timing {
            parse,
            ..Timing::default()
        };

        let clock = Instant::now();
        let profile = zeta_profile(graph);
        timing.zeta = clock.elapsed();

        let clock = Instant::now();
        let bounds = BoundReport::compute_with(graph, &profile);
        let family_f = is_in_family_f(graph);
        timing.bounds = clock.elapsed();

        let clock = Instant::now();
        let one = one_cheap_greedy(graph).map_err(|e| format!("{name}: 1cheap: {e}"))?;
        let two = two_cheap_greedy(graph).map_err(|e| format!("{name}: 2cheap: {e}"))?;
        let greedy = [min_greedy(graph), cheap_greedy(graph), one, two]
            .iter()
            .map(GreedySummary::from)
            .collect();
        timing.greedy = clock.elapsed();

        let clock = Instant::now();
        let alpha = [0, 1, 2].map(|k| {
            let limit = if k == 0 { limits.alpha0 } else { limits.alpha_k };
            (n <= limit).then(|| exact_alpha_k(graph, k).ok().map(|r| r.size)).flatten()
        });
        timing.oracle = clock.elapsed();

        let zeta_mean = if n == 0 {
            rational::zero()
        } else {
            Rational::new(profile.sum().into(), n.into())
        };
        Ok(Self {
            name,
            format: doc.format.as_str(),
            n,
            m: graph.edge_count(),
            zeta_min: profile.zeta.iter().copied().min().unwrap_or(0),
            zeta_max: profile.degeneracy,
            zeta_mean,
            bounds,
            greedy,
            alpha,
            family_f,
            timing,
        })
    }

    /// Checks sizes against certificates, oracles against bounds and greedy
    /// sizes, and that no cheap-set anomaly was logged.
    pub fn check(&self) -> Result<(), String> {
        let fail = |what: String| Err(format!("{}: {what}", self.name));
        for run in &self.greedy {
            if run.size < ceil_usize(&run.certificate) {
                return fail(format!("{} size {} below certificate {}", run.algorithm, run.size, run.certificate));
            }
            if run.anomalies > 0 {
                return fail(format!("{} logged {} cheap-set anomalies", run.algorithm, run.anomalies));
            }
            if let Some(alpha) = self.alpha[run.level] {
                if run.size > alpha {
                    return fail(format!("{} size {} exceeds alpha_{} = {alpha}", run.algorithm, run.size, run.level));
                }
            }
        }
        let b = &self.bounds;
        let mut by_level: [Vec<(&str, &Rational)>; 3] = [b.alpha0_bounds(), vec![("z2", &b.z2)], vec![("z3", &b.z3)]];
        for (k, forest) in [&b.forest_z1, &b.forest_z2, &b.forest_z3].into_iter().enumerate() {
            if let Some(value) = forest {
                by_level[k].push(("forest", value));
            }
        }
        for (k, bounds) in by_level.iter().enumerate() {
            let Some(alpha) = self.alpha[k] else { continue };
            for (name, value) in bounds {
                if rational::from_usize(alpha) < **value {
                    return fail(format!("alpha_{k} = {alpha} below {name} = {value}"));
                }
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        let (bounds, bounds_approx) = bound_maps(&self.bounds);
        let greedy: Vec<Value> = self
            .greedy
            .iter()
            .map(|g| {
                json!({
                    "algorithm": g.algorithm,
                    "level": g.level,
                    "size": g.size,
                    "certificate": exact(&g.certificate),
                    "certificate_approx": approx(&g.certificate),
                    "anomalies": g.anomalies,
                })
            })
            .collect();
        json!({
            "name": self.name,
            "format": self.format,
            "n": self.n,
            "m": self.m,
            "zeta": {
                "min": self.zeta_min,
                "max": self.zeta_max,
                "mean": exact(&self.zeta_mean),
                "mean_approx": approx(&self.zeta_mean),
            },
            "bounds": bounds,
            "bounds_approx": bounds_approx,
            "greedy": greedy,
            "oracle": {
                "alpha0": self.alpha[0],
                "alpha1": self.alpha[1],
                "alpha2": self.alpha[2],
            },
            "family_f": self.family_f,
            "timing_ms": {
                "parse": millis(self.timing.parse),
                "zeta": millis(self.timing.zeta),
                "bounds": millis(self.timing.bounds),
                "greedy": millis(self.timing.greedy),
                "oracle": millis(self.timing.oracle),
            },
        })
    }

    fn csv_header() -> Vec<String> {
        let mut header: Vec<String> = ["name", "format", "n", "m", "zeta_min", "zeta_max", "zeta_mean", "zeta_mean_approx"]
            .map(String::from)
            .to_vec();
        for name in BOUND_NAMES {
            header.push(name.into());
            header.push(format!("{name}_approx"));
        }
        for algo in GREEDY_ALGORITHMS {
            for field in ["size", "certificate", "certificate_approx", "anomalies"] {
                header.push(format!("greedy_{algo}_{field}"));
            }
        }
        header.extend(["alpha0", "alpha1", "alpha2", "family_f"].map(String::from));
        for phase in ["parse", "zeta", "bounds", "greedy", "oracle"] {
            header.push(format!("{phase}_ms"));
        }
        header
    }

    fn csv_row(&self) -> Vec<String> {
        let text = |v: Value| match v {
            Value::String(s) => s,
            Value::Null => String::new(),
            other => other.to_string(),
        };
        let mut row = vec![
            self.name.clone(),
            self.format.into(),
            self.n.to_string(),
            self.m.to_string(),
            self.zeta_min.to_string(),
            self.zeta_max.to_string(),
            text(exact(&self.zeta_mean)),
            text(approx(&self.zeta_mean)),
        ];
        let entries = self.bounds.entries();
        for name in BOUND_NAMES {
            let value = entries.iter().find(|(n, _)| *n == name).and_then(|(_, v)| *v);
            row.push(text(optional(value, exact)));
            row.push(text(optional(value, approx)));
        }
        for algo in GREEDY_ALGORITHMS {
            let g = self.greedy.iter().find(|g| g.algorithm == algo).expect("all algorithms run");
            row.push(g.size.to_string());
            row.push(text(exact(&g.certificate)));
            row.push(text(approx(&g.certificate)));
            row.push(g.anomalies.to_string());
        }
        for alpha in self.alpha {
            row.push(alpha.map(|a| a.to_string()).unwrap_or_default());
        }
        row.push(self.family_f.to_string());
        let t = &self.timing;
        for phase in [t.parse, t.zeta, t.bounds, t.greedy, t.oracle] {
            row.push(format!("{:.3}", millis(phase)));
        }
        row
    }
}

fn millis(d: Duration) -> f64 {
    d.as_secs_f64() * 1e3
}

pub fn write_json(records: &[Record], out: &mut impl Write) -> std::io::Result<()> {
    let report = json!({
        "schema": SCHEMA,
        "rows": records.iter().map(Record::to_json).collect::<Vec<_>>(),
    });
    serde_json::to_writer_pretty(&mut *out, &report)?;
    writeln!(out)
}

pub fn write_csv(records: &[Record], out: &mut impl Write) -> csv::Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    writer.write_record(Record::csv_header())?;
    for record in records {
        writer.write_record(record.csv_row())?;
    }
    writer.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formats::parse_edge_list;

    const LIMITS: OracleLimits = OracleLimits { alpha0: 40, alpha_k: 16 };

    #[test]
    fn record_for_triangle_pendant() {
        let doc = parse_edge_list("a b\nb c\nc a\na d").unwrap();
        let record = Record::compute("tp".into(), &doc, Duration::ZERO, LIMITS).unwrap();
        record.check().unwrap();
        assert_eq!((record.n, record.m, record.zeta_min, record.zeta_max), (4, 4, 1, 2));
        assert_eq!(record.zeta_mean, rational::ratio(7, 4));
        assert_eq!(record.alpha, [Some(2), Some(3), Some(3)]);
        let value = record.to_json();
        assert_eq!(value["bounds"]["z1"], "3/2");
        assert_eq!(value["greedy"][0]["algorithm"], "min");
    }

    #[test]
    fn check_flags_inconsistent_oracle() {
        let doc = parse_edge_list("0 1\n1 2\n2 3").unwrap();
        let mut record = Record::compute("p4".into(), &doc, Duration::ZERO, LIMITS).unwrap();
        record.check().unwrap();
        record.alpha[0] = Some(1);
        assert!(record.check().is_err());
    }

    #[test]
    fn csv_columns_line_up() {
        let doc = parse_edge_list("0 1\n1 2").unwrap();
        let record = Record::compute("p3".into(), &doc, Duration::ZERO, LIMITS).unwrap();
        assert_eq!(Record::csv_header().len(), record.csv_row().len());
        let mut buffer = Vec::new();
        write_csv(&[record], &mut buffer).unwrap();
        let text = String::from_utf8(buffer).unwrap();
        assert!(text.starts_with("name,format,n,m,"));
        assert!(text.contains("p3,edge-list,3,2,"));
    }
}
