//! The reference-value suite behind `frobscan verify-paper`. Expected values
//! come from the `reference_values.txt` fixture and the curves from the
//! variety fixtures, so a fixture directory can override either.

use std::collections::BTreeMap;

use frobscan_core::bounds::gamma;
use frobscan_core::counting::{count_points, CountMethod};
use frobscan_core::primes::least_prime_in_ap;
use frobscan_core::{CountConfig, UniPoly, Variety};
use serde::Serialize;
use serde_json::{json, Value};

use crate::files::parse_variety;
use crate::fixtures::Fixtures;
use crate::par;

pub const GROUPS: &[&str] = &["x1", "c17", "c457", "genus2", "gamma", "least-prime"];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Item {
    pub name: String,
    pub expected: Value,
    pub got: Value,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub items: Vec<Item>,
    pub skipped: Vec<String>,
    pub passed: usize,
    pub failed: usize,
    pub all_pass: bool,
}

/// `group.item: integer` lines.
pub fn parse_values(text: &str) -> Result<BTreeMap<String, u64>, String> {
    let mut out = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once(':')
            .ok_or_else(|| format!("line {}: expected `key: value`", i + 1))?;
        let v: u64 = v
            .trim()
            .parse()
            .map_err(|_| format!("line {}: `{}` is not an integer", i + 1, v.trim()))?;
        out.insert(k.trim().to_string(), v);
    }
    Ok(out)
}

struct Ctx<'a> {
    fixtures: &'a Fixtures,
    values: BTreeMap<String, u64>,
    cfg: CountConfig,
    items: Vec<Item>,
}

impl Ctx<'_> {
    fn value(&self, key: &str) -> Result<u64, String> {
        self.values
            .get(key)
            .copied()
            .ok_or_else(|| format!("reference value `{key}` missing"))
    }

    fn variety(&self, name: &str) -> Result<Variety, String> {
        let text = self
            .fixtures
            .get(name)
            .map_err(|e| format!("{name}: {e}"))?;
        parse_variety(&text).map_err(|e| format!("{name}: {e}"))
    }

    fn curve(&self, name: &str) -> Result<(Variety, UniPoly), String> {
        let v = self.variety(name)?;
        let (_, h) = v
            .hyperelliptic_model()
            .ok_or_else(|| format!("{name}: not of the form y^2 = h(x)"))?;
        Ok((v, h))
    }

    fn push(&mut self, name: &str, expected: Value, got: Value) {
        let pass = expected == got;
        self.items.push(Item {
            name: name.to_string(),
            expected,
            got,
            pass,
        });
    }

    /// Records a computation error as a failed item.
    fn record(&mut self, name: &str, r: Result<(), String>) {
        if let Err(e) = r {
            self.push(name, json!("a value"), json!({ "error": e }));
        }
    }

    fn x1(&mut self) -> Result<(), String> {
        let v = self.variety("x1.var")?;
        let want = self.value("x1.n_at_7")?;
        for (name, method) in [
            ("x1.bruteforce", CountMethod::BruteForce),
            ("x1.charsum", CountMethod::CharSum),
        ] {
            let n = count_points(&v, 7, method, &self.cfg)
                .map_err(|e| e.to_string())?
                .n_affine;
            self.push(name, json!(want), json!(n));
        }
        Ok(())
    }

    /// `N(p) = p` at every good `p < P_0` and the count at `P_0`.
    fn cq(&mut self, group: &str, q: u64) -> Result<(), String> {
        let (v, _) = self.curve(&format!("{group}.var"))?;
        let p0 = least_prime_in_ap(q, 1).map_err(|e| e.to_string())?;
        self.push(
            &format!("{group}.p0"),
            json!(self.value(&format!("{group}.p0"))?),
            json!(p0),
        );
        let primes: Vec<u64> = par::primes_in(3, p0 - 1)
            .map_err(|e| e.to_string())?
            .into_iter()
            .filter(|&p| v.is_good(p))
            .collect();
        let recs = par::count_many(&v, &primes, CountMethod::Auto, &self.cfg)
            .map_err(|e| e.to_string())?;
        let failures: Vec<(u64, u64)> = recs
            .iter()
            .filter(|r| r.n_affine != r.p)
            .map(|r| (r.p, r.n_affine))
            .collect();
        self.push(
            &format!("{group}.anomalous_below_p0"),
            json!({ "primes_checked": primes.len(), "failures": [] }),
            json!({ "primes_checked": recs.len(), "failures": failures }),
        );
        let n0 = count_points(&v, p0, CountMethod::Auto, &self.cfg)
            .map_err(|e| e.to_string())?
            .n_affine;
        self.push(
            &format!("{group}.n_at_p0"),
            json!(self.value(&format!("{group}.n_at_p0"))?),
            json!(n0),
        );
        Ok(())
    }

    fn genus2(&mut self) -> Result<(), String> {
        let (_, h1) = self.curve("genus2_c1.var")?;
        let (_, h2) = self.curve("genus2_c2.var")?;
        let bound = self.value("genus2.bound")?;
        let r = par::verify_genus2_pair(&[h1, h2], bound, bound, &self.cfg)
            .map_err(|e| e.to_string())?;
        let failures: Vec<u64> = r.failures_below_bound;
        self.push(
            "genus2.pair_below_bound",
            json!({ "bound": bound, "failures": [] }),
            json!({ "bound": bound, "failures": failures }),
        );
        Ok(())
    }

    fn gamma(&mut self) -> Result<(), String> {
        for g in 1..=3u32 {
            let key = format!("gamma.g{g}");
            self.push(&key, json!(self.value(&key)?), json!(gamma(g)));
        }
        Ok(())
    }

    fn least_prime(&mut self) -> Result<(), String> {
        let keys: Vec<String> = self
            .values
            .keys()
            .filter(|k| k.starts_with("least-prime.q"))
            .cloned()
            .collect();
        for key in keys {
            let q: u64 = key["least-prime.q".len()..]
                .parse()
                .map_err(|_| format!("bad key `{key}`"))?;
            let p = least_prime_in_ap(q, 1).map_err(|e| e.to_string())?;
            self.push(&key, json!(self.value(&key)?), json!(p));
        }
        Ok(())
    }
}

/// Runs every group not named in `skip`.
pub fn run(fixtures: &Fixtures, skip: &[String], cfg: CountConfig) -> Result<SuiteReport, String> {
    for s in skip {
        if !GROUPS.contains(&s.as_str()) {
            return Err(format!(
                "unknown group `{s}`; groups are {}",
                GROUPS.join(", ")
            ));
        }
    }
    let text = fixtures
        .get("reference_values.txt")
        .map_err(|e| e.to_string())?;
    let mut ctx = Ctx {
        fixtures,
        values: parse_values(&text)?,
        cfg,
        items: Vec::new(),
    };
    for group in GROUPS {
        if skip.iter().any(|s| s == group) {
            continue;
        }
        let r = match *group {
            "x1" => ctx.x1(),
            "c17" => ctx.cq("c17", 17),
            "c457" => ctx.cq("c457", 457),
            "genus2" => ctx.genus2(),
            "gamma" => ctx.gamma(),
            _ => ctx.least_prime(),
        };
        ctx.record(group, r);
    }
    let passed = ctx.items.iter().filter(|i| i.pass).count();
    let failed = ctx.items.len() - passed;
    Ok(SuiteReport {
        items: ctx.items,
        skipped: skip.to_vec(),
        passed,
        failed,
        all_pass: failed == 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fast_groups_pass() {
        let skip = vec!["c457".to_string()];
        let r = run(&Fixtures::default(), &skip, CountConfig::default()).unwrap();
        assert!(
            r.all_pass,
            "{:#?}",
            r.items.iter().filter(|i| !i.pass).collect::<Vec<_>>()
        );
        assert!(r.items.iter().any(|i| i.name == "x1.charsum"));
        assert!(r.items.iter().all(|i| !i.name.starts_with("c457")));
    }

    #[test]
    fn wrong_reference_value_fails_one_item() {
        let dir = tempfile::tempdir().unwrap();
        let text = crate::fixtures::builtin("reference_values.txt")
            .unwrap()
            .replace("87", "88");
        std::fs::write(dir.path().join("reference_values.txt"), text).unwrap();
        let skip: Vec<String> = ["c457", "x1", "genus2"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        let r = run(
            &Fixtures::new(Some(dir.path().into())),
            &skip,
            CountConfig::default(),
        )
        .unwrap();
        let bad: Vec<&str> = r
            .items
            .iter()
            .filter(|i| !i.pass)
            .map(|i| i.name.as_str())
            .collect();
        assert_eq!(bad, ["c17.n_at_p0"]);
    }

    #[test]
    fn unknown_group_is_rejected() {
        assert!(run(
            &Fixtures::default(),
            &["c99".into()],
            CountConfig::default()
        )
        .is_err());
    }
}
