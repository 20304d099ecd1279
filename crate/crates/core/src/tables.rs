//! Versioned fixtures of generator lists with their published GL2 classes.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::exact::IntPoly;
use crate::json::{parse_int, PolyJson};

pub const FIXTURE_VERSION: u32 = 1;

const TABLE1: &str = include_str!("../data/table1.json");
const TABLE2: &str = include_str!("../data/table2.json");
const TABLE3: &str = include_str!("../data/table3.json");

/// On-disk layout. `classes` use 1-based indices into `betas`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TableFile {
    pub version: u32,
    pub name: String,
    pub poly: PolyJson,
    pub betas: Vec<Vec<String>>,
    pub classes: Vec<Vec<usize>>,
    pub sha256: String,
}

#[derive(Serialize)]
struct Checked<'a> {
    poly: &'a PolyJson,
    betas: &'a [Vec<String>],
    classes: &'a [Vec<usize>],
}

impl TableFile {
    /// SHA-256 of the compact JSON of `poly`, `betas` and `classes`.
    pub fn digest(&self) -> String {
        let body = serde_json::to_string(&Checked {
            poly: &self.poly,
            betas: &self.betas,
            classes: &self.classes,
        })
        .expect("serializable");
        let hash = Sha256::digest(body.as_bytes());
        hash.iter().map(|b| format!("{b:02x}")).collect()
    }
}

/// A parsed, checksum-verified fixture.
#[derive(Clone, Debug)]
pub struct Table {
    pub name: String,
    pub poly: IntPoly,
    pub betas: Vec<Vec<BigInt>>,
    /// 1-based, as printed.
    pub printed_classes: Vec<Vec<usize>>,
}

pub fn parse_table(text: &str) -> Result<Table> {
    let file: TableFile = serde_json::from_str(text)
        .map_err(|e| Error::Parse(e.to_string()))?;
    if file.version != FIXTURE_VERSION {
        return Err(Error::Parse(format!(
            "fixture version {} unsupported (expected {FIXTURE_VERSION})",
            file.version
        )));
    }
    let digest = file.digest();
    if digest != file.sha256 {
        return Err(Error::Parse(format!(
            "checksum mismatch for {}: stored {}, computed {digest}",
            file.name, file.sha256
        )));
    }
    let coeffs = file.poly.coeffs.iter().map(|s| parse_int(s)).collect::<Result<_>>()?;
    let betas = file
        .betas
        .iter()
        .map(|b| b.iter().map(|s| parse_int(s)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    Ok(Table {
        name: file.name,
        poly: IntPoly::new(coeffs),
        betas,
        printed_classes: file.classes,
    })
}

pub fn builtin(index: usize) -> Result<Table> {
    match index {
        1 => parse_table(TABLE1),
        2 => parse_table(TABLE2),
        3 => parse_table(TABLE3),
        _ => Err(Error::Domain(format!("no built-in table {index}"))),
    }
}

pub fn builtin_text(index: usize) -> Option<&'static str> {
    [TABLE1, TABLE2, TABLE3].get(index.wrapping_sub(1)).copied()
}

/// Comparison of a computed partition (1-based) with the printed one.
#[derive(Clone, Debug, Serialize)]
pub struct ClassDiff {
    pub computed: Vec<Vec<usize>>,
    pub printed: Vec<Vec<usize>>,
    /// Printed classes reproduced exactly (as sets).
    pub matching: usize,
    pub only_computed: Vec<Vec<usize>>,
    pub only_printed: Vec<Vec<usize>>,
}

impl ClassDiff {
    pub fn exact(&self) -> bool {
        self.only_computed.is_empty() && self.only_printed.is_empty()
    }
}

pub fn compare_classes(computed: &[Vec<usize>], printed: &[Vec<usize>]) -> ClassDiff {
    let norm = |cs: &[Vec<usize>]| -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = cs
            .iter()
            .map(|c| {
                let mut c = c.clone();
                c.sort_unstable();
                c.dedup();
                c
            })
            .collect();
        out.sort();
        out
    };
    let (c, p) = (norm(computed), norm(printed));
    let only_computed: Vec<_> = c.iter().filter(|x| !p.contains(x)).cloned().collect();
    let only_printed: Vec<_> = p.iter().filter(|x| !c.contains(x)).cloned().collect();
    ClassDiff {
        matching: p.len() - only_printed.len(),
        computed: c,
        printed: p,
        only_computed,
        only_printed,
    }
}
