//! Finite complex reflection groups: generator kits, enumeration, reflections,
//! hyperplanes and conjugacy classes.

mod spec;
mod table;

pub use spec::{
    build_imprimitive, build_type_a, catalog_names, imprimitive_expected, load_file, Expected,
    GeneratorKit, GroupFile, GroupSpec, Term, DATA_ENV,
};
pub use table::{ConjugacyClasses, GroupTable, Hyperplane, DEFAULT_CAP};

use crate::error::{Error, Result};
use crate::invariants::{degrees_and_exponents, DegreeData};

/// An enumerated reflection group whose claimed invariants have been checked.
#[derive(Debug)]
pub struct Group {
    pub name: String,
    pub table: GroupTable,
    pub degrees: DegreeData,
}

impl Group {
    pub fn from_spec(spec: &GroupSpec, cap: usize) -> Result<Group> {
        Group::from_kit(spec.kit()?, cap)
    }

    /// Enumerates the kit and validates it: the group must be generated by
    /// reflections, `sum (d_i - 1) = |R|`, `prod d_i = |W|`, and every
    /// expected value must match.
    pub fn from_kit(kit: GeneratorKit, cap: usize) -> Result<Group> {
        let table = GroupTable::enumerate(&kit.generators, cap)?;
        let degrees = degrees_and_exponents(&table)?;
        let exp_sum: u64 = degrees.exponents.iter().sum();
        if exp_sum != table.reflections().len() as u64 {
            return Err(Error::integrity(format!(
                "{}: sum of exponents {exp_sum} != {} reflections",
                kit.name,
                table.reflections().len()
            )));
        }
        let deg_prod: u64 = degrees.degrees.iter().product();
        if deg_prod != table.order() as u64 {
            return Err(Error::integrity(format!(
                "{}: product of degrees {deg_prod} != order {}",
                kit.name,
                table.order()
            )));
        }
        let e = &kit.expected;
        let mismatch = |what: &str, want: String, got: String| {
            Error::integrity(format!("{}: expected {what} {want}, found {got}", kit.name))
        };
        if let Some(order) = e.order.filter(|&o| o != table.order()) {
            return Err(mismatch(
                "order",
                order.to_string(),
                table.order().to_string(),
            ));
        }
        if let Some(r) = e.reflections.filter(|&r| r != table.reflections().len()) {
            return Err(mismatch(
                "reflections",
                r.to_string(),
                table.reflections().len().to_string(),
            ));
        }
        if let Some(d) = e.degrees.as_ref().filter(|&d| d != &degrees.degrees) {
            return Err(mismatch(
                "degrees",
                format!("{d:?}"),
                format!("{:?}", degrees.degrees),
            ));
        }
        if let Some(irr) = e.irreducible {
            let got = table.is_irreducible();
            if irr != got {
                return Err(mismatch("irreducible", irr.to_string(), got.to_string()));
            }
        }
        Ok(Group {
            name: kit.name,
            table,
            degrees,
        })
    }

    /// Coxeter number `h`.
    pub fn h(&self) -> u64 {
        self.degrees.coxeter_number
    }
}
