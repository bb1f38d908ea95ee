//! Generators of the ideals over `Z`, as JSON elements or a CSV matrix.

use std::io::Write;

use clap::ValueEnum;
use levelflat::algebra::{AlgebraElement, Basis, ExponentMatrix, Integers};
use levelflat::km_compare::{family_lattice, full_ideal_lattice, KmdIdeals};
use levelflat::level_ideals::Family;
use levelflat::linalg::IntegerLattice;
use levelflat::{Error, Prime, Result};
use serde_json::json;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Which {
    #[value(name = "I")]
    I,
    #[value(name = "C")]
    C,
    #[value(name = "R")]
    R,
    #[value(name = "KMD")]
    Kmd,
}

impl Which {
    fn label(self) -> &'static str {
        match self {
            Which::I => "I",
            Which::C => "C",
            Which::R => "R",
            Which::Kmd => "KMD",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BasisArg {
    Group,
    Shifted,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// HNF of the requested ideal over `Z`.
pub fn ideal_lattice(p: Prime, which: Which) -> Result<IntegerLattice> {
    match which {
        Which::I => Ok(full_ideal_lattice(p)),
        Which::C => family_lattice(p, Family::Column),
        Which::R => family_lattice(p, Family::Row),
        Which::Kmd => Ok(KmdIdeals::build(p)?.combined.lattice().clone()),
    }
}

/// HNF rows as elements, in the group basis or rewritten in `s, t, u, v`.
pub fn generators(p: Prime, which: Which, basis: BasisArg) -> Result<Vec<AlgebraElement<Integers>>> {
    ideal_lattice(p, which)?
        .rows()
        .iter()
        .map(|row| {
            let f = AlgebraElement::from_coeffs(p, Integers, Basis::Group, row.clone())?;
            Ok(match basis {
                BasisArg::Group => f,
                BasisArg::Shifted => f.to_shifted(),
            })
        })
        .collect()
}

pub fn dump_ideal(p: Prime, which: Which, basis: BasisArg, format: Format, out: &mut impl Write) -> Result<()> {
    let gens = generators(p, which, basis)?;
    let io = |e: std::io::Error| Error::OutOfRange(format!("write failed: {e}"));
    match format {
        Format::Json => {
            let doc = json!({
                "p": p.get(),
                "which": which.label(),
                "basis": match basis { BasisArg::Group => "group", BasisArg::Shifted => "shifted" },
                "rank": gens.len(),
                "generators": gens.iter().map(|g| g.to_json()).collect::<Vec<_>>(),
            });
            let text = serde_json::to_string_pretty(&doc).map_err(|e| Error::Parse(e.to_string()))?;
            writeln!(out, "{text}").map_err(io)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            let header: Vec<String> = ExponentMatrix::all(p)
                .map(|e| match basis {
                    BasisArg::Group => e.to_string(),
                    BasisArg::Shifted => e.to_string().to_lowercase(),
                })
                .collect();
            let csv_err = |e: csv::Error| Error::OutOfRange(format!("write failed: {e}"));
            w.write_record(&header).map_err(csv_err)?;
            for g in &gens {
                w.write_record(g.coeffs().iter().map(|c| c.to_string())).map_err(csv_err)?;
            }
            w.flush().map_err(io)
        }
    }
}
