//! Space selectors: a catalog name (`G2/SO4`), a family with parameters
//! (`SO(2m)/U(m):m=3`), or inline data (`n=5,d=10,a=0.75`, `a=0.75,d=10`).

use hxh_einstein::catalog::normalize_name;
use hxh_einstein::{validate, SpaceDescriptor, SpaceParams, SpaceFamily};

use crate::error::CliError;

#[derive(Debug, Clone)]
pub struct Selected {
    pub label: String,
    pub params: SpaceParams,
}

impl Selected {
    fn from_descriptor(desc: &SpaceDescriptor) -> Self {
        Self {
            label: describe(&desc.name, f64::from(desc.n), f64::from(desc.d), desc.single_a),
            params: desc.params(),
        }
    }
}

fn describe(name: &str, n: f64, d: f64, a: Option<f64>) -> String {
    match a {
        Some(a) => format!("{name} (n={n}, d={d}, a={a})"),
        None => format!("{name} (n={n}, d={d})"),
    }
}

pub fn resolve(selector: &str, catalog: &[SpaceDescriptor]) -> Result<Selected, CliError> {
    let wanted = normalize_name(selector);
    if let Some(desc) = catalog.iter().find(|s| normalize_name(&s.name) == wanted) {
        return Ok(Selected::from_descriptor(desc));
    }
    if let Some((family, args)) = selector.split_once(':') {
        return resolve_family(family, args);
    }
    if selector.contains('=') && !selector.contains('/') {
        return resolve_inline(selector);
    }
    Err(CliError::UnknownSpace(selector.to_string()))
}

fn parse_pairs(text: &str) -> Result<Vec<(String, f64)>, CliError> {
    text.split(',')
        .map(|pair| {
            let (k, v) = pair
                .split_once('=')
                .ok_or_else(|| CliError::BadArg(format!("expected key=value, got `{pair}`")))?;
            let v: f64 = v
                .trim()
                .parse()
                .map_err(|_| CliError::BadArg(format!("`{v}` is not a number")))?;
            Ok((k.trim().to_ascii_lowercase(), v))
        })
        .collect()
}

fn as_u32(key: &str, v: f64) -> Result<u32, CliError> {
    if v >= 0.0 && v.fract() == 0.0 && v <= f64::from(u32::MAX) {
        Ok(v as u32)
    } else {
        Err(CliError::BadArg(format!("{key}={v} must be a non-negative integer")))
    }
}

fn resolve_family(family: &str, args: &str) -> Result<Selected, CliError> {
    let pairs = parse_pairs(args)?;
    let get = |key: &str| -> Result<u32, CliError> {
        let v = pairs
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| *v)
            .ok_or_else(|| CliError::BadArg(format!("family `{family}` needs `{key}`")))?;
        as_u32(key, v)
    };
    let stem = normalize_name(family);
    let row = if stem == normalize_name("SU(p+q)/SU(p)xSU(q)xS1") {
        SpaceFamily::SuPq { p: get("p")?, q: get("q")? }
    } else if stem == normalize_name("SO(2m)/U(m)") {
        SpaceFamily::So2mUm { m: get("m")? }
    } else if stem == normalize_name("SO(p+q)/SO(p)xSO(q)") {
        SpaceFamily::SoPq { p: get("p")?, q: get("q")? }
    } else if stem == normalize_name("Sp(m)/SU(m)xS1") {
        SpaceFamily::SpmUm { m: get("m")? }
    } else if stem == normalize_name("Sp(p+q)/Sp(p)xSp(q)") {
        SpaceFamily::SpPq { p: get("p")?, q: get("q")? }
    } else {
        return Err(CliError::UnknownSpace(format!("{family}:{args}")));
    };
    Ok(Selected::from_descriptor(&row.descriptor()?))
}

fn resolve_inline(selector: &str) -> Result<Selected, CliError> {
    let pairs = parse_pairs(selector)?;
    let (mut n, mut d, mut a) = (None, None, None);
    for (k, v) in pairs {
        match k.as_str() {
            "n" => n = Some(v),
            "d" => d = Some(v),
            "a" => a = Some(v),
            _ => return Err(CliError::BadArg(format!("unknown key `{k}` in `{selector}`"))),
        }
    }
    let d = d.ok_or_else(|| CliError::BadArg(format!("`{selector}` lacks d")))?;
    if let Some(a) = a {
        if !(a > 0.0 && a < 1.0) {
            return Err(CliError::BadArg(format!("a={a} outside (0, 1)")));
        }
    }
    let params = match (n, a) {
        (Some(n), Some(a)) => {
            let desc = SpaceDescriptor::new("inline", as_u32("n", n)?, as_u32("d", d)?).with_single_a(a);
            if let Some(v) = validate(&desc).first() {
                return Err(CliError::BadArg(v.to_string()));
            }
            desc.params()
        }
        (None, Some(a)) => SpaceParams::with_single_a(d, a),
        (Some(n), None) => SpaceParams::new(n, d),
        (None, None) => return Err(CliError::BadArg(format!("`{selector}` needs n or a"))),
    };
    if !(params.n > 0.0 && params.d > 0.0) {
        return Err(CliError::BadArg("n and d must be positive".into()));
    }
    Ok(Selected {
        label: describe("inline", params.n, params.d, params.single_a()),
        params,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use hxh_einstein::builtin_catalog;

    #[test]
    fn names_and_aliases() {
        let cat = builtin_catalog();
        let g2 = resolve("G2/SO4", &cat).unwrap();
        assert_eq!((g2.params.n, g2.params.d), (8.0, 6.0));
        let su4 = resolve("SU(4)/Sp(2)", &cat).unwrap();
        assert_eq!(su4.params.single_a(), Some(0.75));
        assert!(resolve("F5/nothing", &cat).is_err());
    }

    #[test]
    fn families() {
        let so = resolve("SO(p+q)/SO(p)xSO(q):p=3,q=4", &[]).unwrap();
        assert_eq!((so.params.n, so.params.d), (12.0, 9.0));
        let so2m = resolve("SO(2m)/U(m):m=5", &[]).unwrap();
        assert_eq!((so2m.params.n, so2m.params.d), (20.0, 25.0));
        assert!(resolve("SO(p+q)/SO(p)xSO(q):p=1,q=2", &[]).is_err());
    }

    #[test]
    fn inline() {
        let s = resolve("a=0.75,d=10", &[]).unwrap();
        assert_eq!((s.params.n, s.params.d), (5.0, 10.0));
        let s = resolve("n=8,d=6", &[]).unwrap();
        assert_eq!(s.params.single_a(), None);
        assert!(resolve("n=4,d=10,a=0.75", &[]).is_err());
        assert!(resolve("d=10", &[]).is_err());
        assert!(resolve("a=1.5,d=10", &[]).is_err());
    }
}
