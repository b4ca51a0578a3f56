//! Text renderings of rankings and decompositions.
//!
//! TSV output starts with a `# format_version=N` line followed by a column
//! header. JSON output is an array whose objects each carry `format_version`.
//! Tree writers flush after every tree.

use std::io::{self, Write};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde_json::{json, Value};
use suptree_core::{ArcId, BigRational, Decomposition, LocalRanking, RankVector};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Tsv,
    Json,
}

/// `value` in scientific notation with `digits` significant digits, rounded
/// half away from zero, e.g. `2.50000000000e-1`.
pub fn format_decimal(value: &BigRational, digits: usize) -> String {
    let digits = digits.max(1);
    if value.is_zero() {
        return format!("{}e0", pad_mantissa("0".repeat(digits)));
    }
    let sign = if value.is_negative() { "-" } else { "" };
    let x = value.abs();
    let ten = BigInt::from(10u32);
    let pow10 = |e: i64| -> BigRational {
        let p = num_traits::pow(ten.clone(), e.unsigned_abs() as usize);
        if e >= 0 {
            BigRational::from_integer(p)
        } else {
            BigRational::new(BigInt::from(1u32), p)
        }
    };
    // estimate, then correct so that 10^e <= x < 10^(e+1)
    let mut e = (suptree_core::rational::ln(&x) / std::f64::consts::LN_10).floor() as i64;
    while x < pow10(e) {
        e -= 1;
    }
    while x >= pow10(e + 1) {
        e += 1;
    }
    let scaled = x * pow10(digits as i64 - 1 - e);
    let (q, r) = scaled.numer().div_rem(scaled.denom());
    let mut n = if r * 2u32 >= *scaled.denom() {
        q + 1u32
    } else {
        q
    };
    if n == num_traits::pow(ten.clone(), digits) {
        n /= 10u32;
        e += 1;
    }
    debug_assert_eq!(n.sign(), Sign::Plus);
    format!("{sign}{}e{e}", pad_mantissa(n.to_string()))
}

fn pad_mantissa(digits: String) -> String {
    if digits.len() == 1 {
        digits
    } else {
        format!("{}.{}", &digits[..1], &digits[1..])
    }
}

pub fn join_arcs(arcs: &[ArcId]) -> String {
    arcs.iter()
        .map(|a| a.0.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// What goes into each emitted tree record.
#[derive(Clone, Copy, Debug)]
pub struct TreeColumns {
    pub ranks_only: bool,
    /// `None` omits the decimal likelihood.
    pub decimal_digits: Option<usize>,
}

impl Default for TreeColumns {
    fn default() -> Self {
        TreeColumns {
            ranks_only: false,
            decimal_digits: Some(12),
        }
    }
}

/// One ranked tree as handed to a [`TreeWriter`].
pub struct TreeRecord<'a> {
    pub rank: u64,
    pub likelihood: &'a BigRational,
    pub rank_vector: &'a RankVector,
    pub arcs: &'a [ArcId],
}

/// Streams ranked trees, flushing after each one.
pub struct TreeWriter<W: Write> {
    out: W,
    format: Format,
    columns: TreeColumns,
    written: u64,
}

impl<W: Write> TreeWriter<W> {
    pub fn new(out: W, format: Format, columns: TreeColumns) -> io::Result<Self> {
        let mut w = TreeWriter {
            out,
            format,
            columns,
            written: 0,
        };
        match format {
            Format::Tsv => {
                writeln!(w.out, "# format_version={FORMAT_VERSION}")?;
                let mut header = vec!["rank", "likelihood_fraction"];
                if columns.decimal_digits.is_some() {
                    header.push("likelihood_decimal");
                }
                header.push("rank_vector");
                if !columns.ranks_only {
                    header.push("arcs");
                }
                writeln!(w.out, "{}", header.join("\t"))?;
            }
            Format::Json => writeln!(w.out, "[")?,
        }
        w.out.flush()?;
        Ok(w)
    }

    pub fn write(&mut self, tree: &TreeRecord<'_>) -> io::Result<()> {
        let c = self.columns;
        let decimal = c.decimal_digits.map(|d| format_decimal(tree.likelihood, d));
        match self.format {
            Format::Tsv => {
                let mut fields = vec![tree.rank.to_string(), tree.likelihood.to_string()];
                fields.extend(decimal);
                fields.push(tree.rank_vector.to_string());
                if !c.ranks_only {
                    fields.push(join_arcs(tree.arcs));
                }
                writeln!(self.out, "{}", fields.join("\t"))?;
            }
            Format::Json => {
                let mut obj = json!({
                    "format_version": FORMAT_VERSION,
                    "rank": tree.rank,
                    "likelihood_fraction": tree.likelihood.to_string(),
                    "rank_vector": tree.rank_vector.0,
                });
                if let Some(d) = decimal {
                    obj["likelihood_decimal"] = Value::String(d);
                }
                if !c.ranks_only {
                    obj["arcs"] = tree.arcs.iter().map(|a| a.0).collect();
                }
                let sep = if self.written == 0 { "" } else { "," };
                writeln!(self.out, "{sep}{obj}")?;
            }
        }
        self.written += 1;
        self.out.flush()
    }

    pub fn finish(mut self) -> io::Result<W> {
        if self.format == Format::Json {
            writeln!(self.out, "]")?;
        }
        self.out.flush()?;
        Ok(self.out)
    }
}

pub fn write_decomposition(
    out: &mut dyn Write,
    d: &Decomposition,
    format: Format,
) -> io::Result<()> {
    match format {
        Format::Tsv => {
            writeln!(out, "# format_version={FORMAT_VERSION}")?;
            writeln!(out, "trail\tkind\tarc_count\tarcs")?;
            for t in d.trails() {
                writeln!(
                    out,
                    "{}\t{}\t{}\t{}",
                    t.index,
                    t.kind,
                    t.len(),
                    join_arcs(&t.arcs)
                )?;
            }
        }
        Format::Json => {
            let rows: Vec<Value> = d
                .trails()
                .iter()
                .map(|t| {
                    json!({
                        "format_version": FORMAT_VERSION,
                        "trail_index": t.index,
                        "kind": t.kind.name(),
                        "arc_count": t.len(),
                        "arcs": t.arcs.iter().map(|a| a.0).collect::<Vec<_>>(),
                    })
                })
                .collect();
            writeln!(out, "{}", Value::Array(rows))?;
        }
    }
    out.flush()
}

pub fn write_local_ranking(
    out: &mut dyn Write,
    local: &LocalRanking,
    format: Format,
    digits: Option<usize>,
) -> io::Result<()> {
    match format {
        Format::Tsv => {
            writeln!(out, "# format_version={FORMAT_VERSION}")?;
            let decimal_col = if digits.is_some() {
                "\tcontribution_decimal"
            } else {
                ""
            };
            writeln!(out, "rank\tvector\tcontribution_fraction{decimal_col}")?;
            for (i, e) in local.entries.iter().enumerate() {
                write!(out, "{}\t{}\t{}", i + 1, e.vector, e.contribution)?;
                if let Some(d) = digits {
                    write!(out, "\t{}", format_decimal(&e.contribution, d))?;
                }
                writeln!(out)?;
            }
        }
        Format::Json => {
            let rows: Vec<Value> = local
                .entries
                .iter()
                .enumerate()
                .map(|(i, e)| {
                    let mut obj = json!({
                        "format_version": FORMAT_VERSION,
                        "trail_index": local.trail_index,
                        "kind": local.kind.name(),
                        "rank": i + 1,
                        "vector": e.vector.to_string(),
                        "contribution_fraction": e.contribution.to_string(),
                    });
                    if let Some(d) = digits {
                        obj["contribution_decimal"] =
                            Value::String(format_decimal(&e.contribution, d));
                    }
                    obj
                })
                .collect();
            writeln!(out, "{}", Value::Array(rows))?;
        }
    }
    out.flush()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn decimals() {
        assert_eq!(format_decimal(&q(1, 4), 12), "2.50000000000e-1");
        assert_eq!(format_decimal(&q(1, 1), 12), "1.00000000000e0");
        assert_eq!(format_decimal(&q(1, 3), 4), "3.333e-1");
        assert_eq!(format_decimal(&q(2, 3), 4), "6.667e-1");
        assert_eq!(format_decimal(&q(1, 10), 3), "1.00e-1");
        assert_eq!(format_decimal(&q(999_999, 1_000_000), 3), "1.00e0");
        assert_eq!(format_decimal(&q(-3, 2), 2), "-1.5e0");
        assert_eq!(format_decimal(&q(0, 1), 3), "0.00e0");
        assert_eq!(format_decimal(&q(7, 1), 1), "7e0");
        assert_eq!(format_decimal(&q(1, 1 << 40), 5), "9.0949e-13");
    }

    #[test]
    fn tiny_values_keep_their_exponent() {
        let tiny = BigRational::new(
            BigInt::from(3u32),
            num_traits::pow(BigInt::from(10u32), 400),
        );
        assert_eq!(format_decimal(&tiny, 3), "3.00e-400");
    }

    #[test]
    fn tsv_and_json_rows() {
        let rv = RankVector(vec![1, 2]);
        let lik = q(3, 8);
        let arcs = [ArcId(0), ArcId(2)];
        let rec = TreeRecord {
            rank: 1,
            likelihood: &lik,
            rank_vector: &rv,
            arcs: &arcs,
        };

        let mut w = TreeWriter::new(Vec::new(), Format::Tsv, TreeColumns::default()).unwrap();
        w.write(&rec).unwrap();
        let text = String::from_utf8(w.finish().unwrap()).unwrap();
        assert_eq!(
            text,
            "# format_version=1\nrank\tlikelihood_fraction\tlikelihood_decimal\trank_vector\tarcs\n1\t3/8\t3.75000000000e-1\t1,2\t0,2\n"
        );

        let mut w = TreeWriter::new(Vec::new(), Format::Json, TreeColumns::default()).unwrap();
        w.write(&rec).unwrap();
        w.write(&TreeRecord { rank: 2, ..rec }).unwrap();
        let v: Value = serde_json::from_slice(&w.finish().unwrap()).unwrap();
        assert_eq!(v[1]["rank"], 2);
        assert_eq!(v[0]["likelihood_fraction"], "3/8");
        assert_eq!(v[0]["rank_vector"], json!([1, 2]));
        assert_eq!(v[0]["arcs"], json!([0, 2]));
        assert_eq!(v[0]["format_version"], 1);
    }

    #[test]
    fn ranks_only_and_exact() {
        let rv = RankVector(vec![1]);
        let lik = q(1, 2);
        let rec = TreeRecord {
            rank: 1,
            likelihood: &lik,
            rank_vector: &rv,
            arcs: &[],
        };
        let cols = TreeColumns {
            ranks_only: true,
            decimal_digits: None,
        };
        let mut w = TreeWriter::new(Vec::new(), Format::Tsv, cols).unwrap();
        w.write(&rec).unwrap();
        let text = String::from_utf8(w.finish().unwrap()).unwrap();
        assert_eq!(
            text.lines().nth(1),
            Some("rank\tlikelihood_fraction\trank_vector")
        );
        assert_eq!(text.lines().nth(2), Some("1\t1/2\t1"));
    }
}
