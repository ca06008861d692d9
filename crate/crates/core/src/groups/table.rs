//! Character tables read from text.
//!
//! ```text
//! group <name>
//! order <N>
//! classes <k>
//! class <label> size <s> ord <o>                       # k lines, identity first
//! irrep <label> dim <d> : <v1> | <v2> | ... | <vk>     # values are CycNum expressions
//! ```

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactnum::expr::parse_expr;
use crate::exactnum::CycNum;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassInfo {
    pub label: String,
    pub size: u64,
    /// Order of the elements in the class.
    pub order: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IrrepInfo {
    pub label: String,
    pub dim: u64,
}

/// A validated character table.
///
/// Construction checks row orthogonality, that the identity column equals the
/// dimensions, `Σ dim² = |G|`, and that products of characters decompose with
/// nonnegative integer multiplicities (these are kept as structure constants).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterTable {
    name: String,
    order: u64,
    classes: Vec<ClassInfo>,
    irreps: Vec<IrrepInfo>,
    values: Vec<Vec<CycNum>>,
    trivial: usize,
    // products[i][j] = multiplicities of each irrep in χ_i χ_j
    products: Vec<Vec<Vec<u64>>>,
}

impl CharacterTable {
    pub fn new(
        name: impl Into<String>,
        order: u64,
        classes: Vec<ClassInfo>,
        irreps: Vec<IrrepInfo>,
        values: Vec<Vec<CycNum>>,
    ) -> Result<Self> {
        let invalid = |m: String| Err(Error::TableValidation(m));
        let k = classes.len();
        if k == 0 {
            return invalid("no classes".into());
        }
        let id = &classes[0];
        if id.size != 1 || id.order != 1 {
            return invalid(format!(
                "first class '{}' must be the identity (size 1, ord 1)",
                id.label
            ));
        }
        for c in &classes {
            if c.size == 0 || !order.is_multiple_of(c.size) {
                return invalid(format!("class '{}' size {} does not divide {order}", c.label, c.size));
            }
            if c.order == 0 || !order.is_multiple_of(c.order) {
                return invalid(format!(
                    "class '{}' element order {} does not divide {order}",
                    c.label, c.order
                ));
            }
        }
        let total: u64 = classes.iter().map(|c| c.size).sum();
        if total != order {
            return invalid(format!("class sizes sum to {total}, expected group order {order}"));
        }
        if irreps.len() != k || values.len() != k {
            return invalid(format!("{} irreps for {k} classes; the table must be square", irreps.len()));
        }
        for (info, row) in irreps.iter().zip(&values) {
            if row.len() != k {
                return invalid(format!("irrep '{}' has {} values, expected {k}", info.label, row.len()));
            }
        }
        for (info, row) in irreps.iter().zip(&values) {
            for (c, v) in classes.iter().zip(row) {
                if !v.lies_in(c.order as u32) {
                    return invalid(format!(
                        "value {v} of '{}' at class '{}' is not in Q(z{}) although the class has order {}",
                        info.label, c.label, c.order, c.order
                    ));
                }
            }
        }

        let inner = |a: &[CycNum], b: &[CycNum]| -> CycNum {
            let s: CycNum = classes
                .iter()
                .zip(a.iter().zip(b))
                .map(|(c, (x, y))| CycNum::from(c.size as i64) * x * y.conj())
                .sum();
            s * CycNum::from_rational(&BigRational::new(BigInt::one(), BigInt::from(order)))
        };
        for i in 0..k {
            let n = inner(&values[i], &values[i]);
            if !n.is_one() {
                return invalid(format!("row norm ≠ 1 for irrep '{}' (norm {n})", irreps[i].label));
            }
        }
        for i in 0..k {
            for j in i + 1..k {
                let p = inner(&values[i], &values[j]);
                if !p.is_zero() {
                    return invalid(format!(
                        "rows '{}' and '{}' are not orthogonal (inner product {p})",
                        irreps[i].label, irreps[j].label
                    ));
                }
            }
        }
        for (info, row) in irreps.iter().zip(&values) {
            if row[0] != CycNum::from(info.dim as i64) {
                return invalid(format!(
                    "identity column of '{}' is {} but dim is {}",
                    info.label, row[0], info.dim
                ));
            }
        }
        let dim_sq: u64 = irreps.iter().map(|r| r.dim * r.dim).sum();
        if dim_sq != order {
            return invalid(format!("sum of squared dimensions is {dim_sq}, expected {order}"));
        }
        let trivial = values
            .iter()
            .position(|row| row.iter().all(CycNum::is_one))
            .ok_or_else(|| Error::TableValidation("no trivial character".into()))?;

        let mut products = vec![vec![Vec::new(); k]; k];
        for i in 0..k {
            for j in i..k {
                let prod: Vec<CycNum> = values[i].iter().zip(&values[j]).map(|(a, b)| a * b).collect();
                let mut mult = Vec::with_capacity(k);
                for (l, row) in values.iter().enumerate() {
                    let m = inner(&prod, row);
                    match m.to_integer().and_then(|m| u64::try_from(m).ok()) {
                        Some(m) => mult.push(m),
                        None => {
                            return invalid(format!(
                                "'{}' ⊗ '{}' contains '{}' with multiplicity {m}",
                                irreps[i].label, irreps[j].label, irreps[l].label
                            ))
                        }
                    }
                }
                products[j][i] = mult.clone();
                products[i][j] = mult;
            }
        }

        Ok(CharacterTable {
            name: name.into(),
            order,
            classes,
            irreps,
            values,
            trivial,
            products,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn classes(&self) -> &[ClassInfo] {
        &self.classes
    }

    pub fn irreps(&self) -> &[IrrepInfo] {
        &self.irreps
    }

    pub fn value(&self, irrep: usize, class: usize) -> &CycNum {
        &self.values[irrep][class]
    }

    pub fn column(&self, class: usize) -> Vec<CycNum> {
        self.values.iter().map(|row| row[class].clone()).collect()
    }

    pub(crate) fn trivial_row(&self) -> usize {
        self.trivial
    }

    pub(crate) fn tensor(&self, i: usize, j: usize) -> Vec<(super::Irrep, u64)> {
        self.products[i][j]
            .iter()
            .enumerate()
            .filter(|(_, m)| **m > 0)
            .map(|(l, m)| (super::Irrep(l), *m))
            .collect()
    }

    /// Renders back to the text format.
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "group {}\norder {}\nclasses {}\n",
            self.name,
            self.order,
            self.classes.len()
        );
        for c in &self.classes {
            out += &format!("class {} size {} ord {}\n", c.label, c.size, c.order);
        }
        for (info, row) in self.irreps.iter().zip(&self.values) {
            let vals: Vec<String> = row.iter().map(CycNum::to_string).collect();
            out += &format!("irrep {} dim {} : {}\n", info.label, info.dim, vals.join(" | "));
        }
        out
    }
}

struct Line<'a> {
    no: usize,
    text: &'a str,
}

impl Line<'_> {
    fn col_of(&self, part: &str) -> usize {
        // `part` is always a subslice of `text`
        let offset = part.as_ptr() as usize - self.text.as_ptr() as usize;
        self.text[..offset].chars().count() + 1
    }

    fn err(&self, part: &str, msg: impl Into<String>) -> Error {
        Error::parse(self.no, self.col_of(part), msg)
    }

    fn number(&self, word: Option<&str>, what: &str) -> Result<u64> {
        let w = word.ok_or_else(|| Error::parse(self.no, self.text.chars().count() + 1, format!("missing {what}")))?;
        w.parse()
            .map_err(|_| self.err(w, format!("expected a nonnegative integer for {what}, found '{w}'")))
    }

    fn keyword(&self, word: Option<&str>, expected: &str) -> Result<()> {
        match word {
            Some(w) if w == expected => Ok(()),
            Some(w) => Err(self.err(w, format!("expected '{expected}', found '{w}'"))),
            None => Err(Error::parse(self.no, self.text.chars().count() + 1, format!("missing '{expected}'"))),
        }
    }
}

/// Parses and validates a character table.
pub fn parse_character_table(text: &str) -> Result<CharacterTable> {
    let mut name = None;
    let mut order = None;
    let mut n_classes = None;
    let mut classes = Vec::new();
    let mut irreps = Vec::new();
    let mut values = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("");
        let line = Line { no: idx + 1, text: raw };
        let mut words = content.split_whitespace();
        let Some(head) = words.next() else { continue };
        match head {
            "group" => {
                let n = words.next().ok_or_else(|| line.err(head, "missing group name"))?;
                if let Some(extra) = words.next() {
                    return Err(line.err(extra, "unexpected trailing input"));
                }
                name = Some(n.to_string());
            }
            "order" => {
                order = Some(line.number(words.next(), "order")?);
            }
            "classes" => {
                n_classes = Some(line.number(words.next(), "class count")?);
            }
            "class" => {
                if !irreps.is_empty() {
                    return Err(line.err(head, "class lines must precede irrep lines"));
                }
                let label = words.next().ok_or_else(|| line.err(head, "missing class label"))?;
                line.keyword(words.next(), "size")?;
                let size = line.number(words.next(), "class size")?;
                line.keyword(words.next(), "ord")?;
                let ord = line.number(words.next(), "element order")?;
                if let Some(extra) = words.next() {
                    return Err(line.err(extra, "unexpected trailing input"));
                }
                classes.push(ClassInfo {
                    label: label.to_string(),
                    size,
                    order: ord,
                });
            }
            "irrep" => {
                let (lhs, rhs) = content
                    .split_once(':')
                    .ok_or_else(|| line.err(head, "expected ':' before character values"))?;
                let mut lw = lhs.split_whitespace().skip(1);
                let label = lw.next().ok_or_else(|| line.err(head, "missing irrep label"))?;
                line.keyword(lw.next(), "dim")?;
                let dim = line.number(lw.next(), "dimension")?;
                if let Some(extra) = lw.next() {
                    return Err(line.err(extra, "unexpected input before ':'"));
                }
                let mut row = Vec::new();
                for cell in rhs.split('|') {
                    if cell.trim().is_empty() {
                        return Err(line.err(cell, "empty character value"));
                    }
                    row.push(parse_expr::<CycNum>(cell, line.no, line.col_of(cell))?);
                }
                irreps.push(IrrepInfo {
                    label: label.to_string(),
                    dim,
                });
                values.push(row);
            }
            other => return Err(line.err(other, format!("unknown directive '{other}'"))),
        }
    }

    let eof = text.lines().count().max(1);
    let name = name.ok_or_else(|| Error::parse(eof, 1, "missing 'group' line"))?;
    let order = order.ok_or_else(|| Error::parse(eof, 1, "missing 'order' line"))?;
    let n_classes = n_classes.ok_or_else(|| Error::parse(eof, 1, "missing 'classes' line"))?;
    if classes.len() as u64 != n_classes {
        return Err(Error::TableValidation(format!(
            "declared {n_classes} classes but found {} class lines",
            classes.len()
        )));
    }
    if order.is_zero() {
        return Err(Error::TableValidation("group order must be positive".into()));
    }
    CharacterTable::new(name, order, classes, irreps, values)
}
