//! Group descriptor mini-language.
//!
//! ```text
//! cyclic:N
//! product:cyclic:A,cyclic:B[,...]
//! table:@path.json          (a JSON descriptor object or a bare Cayley table)
//! dihedral:N | symmetric:3 | quaternion:8
//! ```

use std::fs;

use nullbasis::group::{
    direct_product_capped, make_cyclic_capped, named, FiniteGroup, GroupDescriptor, GroupError,
};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DescriptorError {
    #[error("unrecognized group descriptor {0:?} (expected cyclic:N, product:..., table:@file.json, dihedral:N, symmetric:3 or quaternion:8)")]
    Syntax(String),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("invalid group file {path}: {source}")]
    Json {
        path: String,
        source: serde_json::Error,
    },
    #[error(transparent)]
    Group(#[from] GroupError),
}

pub fn parse_group(spec: &str, max_order: usize) -> Result<FiniteGroup, DescriptorError> {
    let spec = spec.trim();
    let syntax = || DescriptorError::Syntax(spec.to_string());
    let (kind, rest) = spec.split_once(':').ok_or_else(syntax)?;
    let number = || rest.trim().parse::<usize>().map_err(|_| syntax());
    match kind {
        "cyclic" => Ok(make_cyclic_capped(number()?, max_order)?),
        "product" => {
            let mut factors = rest.split(',').map(|f| parse_group(f, max_order));
            let first = factors.next().ok_or_else(syntax)??;
            factors.try_fold(first, |acc, f| {
                Ok(direct_product_capped(&acc, &f?, max_order)?)
            })
        }
        "table" => {
            let path = rest.strip_prefix('@').ok_or_else(syntax)?;
            load_table_file(path, max_order)
        }
        "dihedral" => Ok(named::dihedral(number()?)?),
        "symmetric" if number()? == 3 => Ok(named::symmetric3()),
        "quaternion" if number()? == 8 => Ok(named::quaternion()),
        _ => Err(syntax()),
    }
}

fn load_table_file(path: &str, max_order: usize) -> Result<FiniteGroup, DescriptorError> {
    let text = fs::read_to_string(path).map_err(|source| DescriptorError::Io {
        path: path.into(),
        source,
    })?;
    let json = |source| DescriptorError::Json {
        path: path.into(),
        source,
    };
    let value: serde_json::Value = serde_json::from_str(&text).map_err(json)?;
    let descriptor = if value.is_array() {
        GroupDescriptor::Table {
            table: serde_json::from_value(value).map_err(json)?,
            label: Some(path.into()),
        }
    } else {
        serde_json::from_value(value).map_err(json)?
    };
    Ok(descriptor.build(max_order)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use nullbasis::group::DEFAULT_MAX_ORDER;

    #[test]
    fn parses_builtin_forms() {
        assert_eq!(
            parse_group("cyclic:7", DEFAULT_MAX_ORDER).unwrap().order(),
            7
        );
        let p = parse_group("product:cyclic:2,cyclic:4", DEFAULT_MAX_ORDER).unwrap();
        assert_eq!(p.order(), 8);
        assert!(p.is_abelian());
        assert!(!parse_group("dihedral:4", DEFAULT_MAX_ORDER)
            .unwrap()
            .is_abelian());
        assert_eq!(
            parse_group("quaternion:8", DEFAULT_MAX_ORDER)
                .unwrap()
                .order(),
            8
        );
        assert!(parse_group("cyclic:x", DEFAULT_MAX_ORDER).is_err());
        assert!(parse_group("klein", DEFAULT_MAX_ORDER).is_err());
        assert!(matches!(
            parse_group("cyclic:100", 50),
            Err(DescriptorError::Group(GroupError::SizeLimit { .. }))
        ));
    }

    #[test]
    fn reads_table_files() {
        let dir = tempfile::tempdir().unwrap();
        let raw = dir.path().join("z3.json");
        fs::write(&raw, "[[0,1,2],[1,2,0],[2,0,1]]").unwrap();
        let g = parse_group(&format!("table:@{}", raw.display()), DEFAULT_MAX_ORDER).unwrap();
        assert_eq!(g.order(), 3);

        let desc = dir.path().join("s3.json");
        fs::write(
            &desc,
            serde_json::to_string(&named::symmetric3().descriptor()).unwrap(),
        )
        .unwrap();
        let g = parse_group(&format!("table:@{}", desc.display()), DEFAULT_MAX_ORDER).unwrap();
        assert!(!g.is_abelian());

        let bad = dir.path().join("bad.json");
        fs::write(&bad, "[[0,1],[0,1]]").unwrap();
        assert!(matches!(
            parse_group(&format!("table:@{}", bad.display()), DEFAULT_MAX_ORDER),
            Err(DescriptorError::Group(GroupError::AxiomViolation(_)))
        ));
    }
}
