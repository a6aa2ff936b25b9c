//! Settings merged from a TOML config file and command-line flags.

use std::path::Path;

use anyhow::{bail, Context, Result};
use dancount::counting::{Caps, Method};
use serde::Deserialize;

/// Fields shared by the config file and the flags; flags win.
#[derive(Debug, Clone, Default, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct Settings {
    pub q: Option<u64>,
    pub r: Option<u32>,
    pub single: Option<bool>,
    pub d: Option<u32>,
    pub d1: Option<u32>,
    pub d2: Option<u32>,
    #[serde(rename = "P")]
    pub p: Option<String>,
    #[serde(rename = "Q")]
    pub q_poly: Option<String>,
    pub methods: Option<String>,
    pub qs: Option<Vec<u64>>,
    pub row: Option<u8>,
    pub caps: Option<CapSettings>,
}

#[derive(Debug, Clone, Default, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct CapSettings {
    pub oracle: Option<u32>,
    pub resultant: Option<u32>,
    pub circulant: Option<u32>,
    pub doublechar: Option<u32>,
    pub enumeration: Option<u32>,
}

impl Settings {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        toml::from_str(&text).with_context(|| format!("parsing config {}", path.display()))
    }

    /// Values present in `over` replace those in `self`.
    pub fn merge(self, over: Settings) -> Settings {
        let caps = match (self.caps, over.caps) {
            (Some(a), Some(b)) => Some(CapSettings {
                oracle: b.oracle.or(a.oracle),
                resultant: b.resultant.or(a.resultant),
                circulant: b.circulant.or(a.circulant),
                doublechar: b.doublechar.or(a.doublechar),
                enumeration: b.enumeration.or(a.enumeration),
            }),
            (a, b) => b.or(a),
        };
        Settings {
            q: over.q.or(self.q),
            r: over.r.or(self.r),
            single: over.single.or(self.single),
            d: over.d.or(self.d),
            d1: over.d1.or(self.d1),
            d2: over.d2.or(self.d2),
            p: over.p.or(self.p),
            q_poly: over.q_poly.or(self.q_poly),
            methods: over.methods.or(self.methods),
            qs: over.qs.or(self.qs),
            row: over.row.or(self.row),
            caps,
        }
    }

    pub fn caps(&self) -> Caps {
        let mut caps = Caps::default();
        if let Some(c) = &self.caps {
            caps.oracle_max_q = c.oracle.unwrap_or(caps.oracle_max_q);
            caps.resultant_max_q = c.resultant.unwrap_or(caps.resultant_max_q);
            caps.circulant_max_q = c.circulant.unwrap_or(caps.circulant_max_q);
            caps.double_char_max_q = c.doublechar.unwrap_or(caps.double_char_max_q);
            caps.enumeration_max_q = c.enumeration.unwrap_or(caps.enumeration_max_q);
        }
        caps
    }

    /// `all` (the default) or a comma-separated list of method names.
    pub fn methods(&self) -> Result<Vec<Method>> {
        match self.methods.as_deref().map(str::trim) {
            None | Some("all") | Some("") => Ok(Method::ALL.to_vec()),
            Some(list) => {
                let mut out = Vec::new();
                for name in list.split(',') {
                    let m: Method = name.parse().map_err(anyhow::Error::msg)?;
                    if !out.contains(&m) {
                        out.push(m);
                    }
                }
                Ok(out)
            }
        }
    }
}

/// Global field-order cap from `DANCOUNT_MAX_Q`, else the library default.
pub fn max_q() -> Result<u64> {
    match std::env::var("DANCOUNT_MAX_Q") {
        Ok(v) => match v.trim().parse::<u64>() {
            Ok(n) if n >= 2 => Ok(n),
            _ => bail!("DANCOUNT_MAX_Q must be an integer >= 2, got `{v}`"),
        },
        Err(_) => Ok(dancount::field::DEFAULT_MAX_Q),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_override_file() {
        let file: Settings = toml::from_str(
            "q = 5\nd1 = 2\nP = \"Z^2\"\nmethods = \"oracle,gcd\"\n[caps]\noracle = 100\n",
        )
        .unwrap();
        let flags = Settings {
            q: Some(7),
            caps: Some(CapSettings {
                resultant: Some(9),
                ..Default::default()
            }),
            ..Default::default()
        };
        let s = file.merge(flags);
        assert_eq!(s.q, Some(7));
        assert_eq!(s.d1, Some(2));
        assert_eq!(s.p.as_deref(), Some("Z^2"));
        assert_eq!(s.methods().unwrap(), vec![Method::Oracle, Method::Gcd]);
        let caps = s.caps();
        assert_eq!((caps.oracle_max_q, caps.resultant_max_q), (100, 9));
    }

    #[test]
    fn rejects_unknown_keys_and_methods() {
        assert!(toml::from_str::<Settings>("bogus = 1").is_err());
        let s = Settings {
            methods: Some("oracle,nope".into()),
            ..Default::default()
        };
        assert!(s.methods().is_err());
    }
}
