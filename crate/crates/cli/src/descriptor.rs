//! Structure and context descriptors: `kind:key=value,…`.
//!
//! Values are comma separated, so a list continues until the next `key=`:
//! `svf:dim=2,f=1,0,lambda=3` sets `f` to `1,0`. Group coefficient families
//! and hand-written product tables are read from CSV files.

use std::collections::BTreeMap;
use std::path::Path;

use comprelie_core::algebra::{AlgebraCtx, Basis, Element, GroupElement, GroupSpec, Scalar};
use comprelie_core::prelie::{
    BilinearProduct, GroupLambdaTable, GroupMorphism, LinearForm, PreLieError, PreLieStructure,
    ProductTable,
};

use crate::parse::{parse_element, parse_group_element};
use crate::CliError;

/// A product to evaluate or check: a named family or an explicit table.
pub enum Target {
    Structure(PreLieStructure),
    Table(ProductTable),
}

impl Target {
    pub fn product(&self) -> &dyn BilinearProduct {
        match self {
            Target::Structure(s) => s,
            Target::Table(t) => t,
        }
    }

    pub fn ctx(&self) -> &AlgebraCtx {
        self.product().ctx()
    }

    pub fn structure(&self) -> Option<&PreLieStructure> {
        match self {
            Target::Structure(s) => Some(s),
            Target::Table(_) => None,
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Target::Structure(s) => s.to_string(),
            Target::Table(t) => format!("table:{}", ctx_descriptor(t.ctx())),
        }
    }
}

/// The parsed `key=value` list of a descriptor.
struct Fields {
    kind: String,
    /// Bare tokens before the first key (e.g. the family in `kx:g1,…`).
    head: Vec<String>,
    values: BTreeMap<String, Vec<String>>,
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

impl Fields {
    fn parse(text: &str) -> Result<Self, CliError> {
        let (kind, rest) = text.split_once(':').unwrap_or((text, ""));
        let mut head = Vec::new();
        let mut values: BTreeMap<String, Vec<String>> = BTreeMap::new();
        let mut current: Option<String> = None;
        for tok in rest.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            match tok.split_once('=') {
                Some((k, v)) => {
                    let k = k.trim().to_string();
                    if values.contains_key(&k) {
                        return Err(usage(format!("duplicate key '{k}' in '{text}'")));
                    }
                    values.insert(k.clone(), vec![v.trim().to_string()]);
                    current = Some(k);
                }
                None => match &current {
                    Some(k) => values.get_mut(k).expect("current key").push(tok.to_string()),
                    None => head.push(tok.to_string()),
                },
            }
        }
        Ok(Fields {
            kind: kind.trim().to_string(),
            head,
            values,
        })
    }

    fn list(&self, key: &str) -> Result<&[String], CliError> {
        self.values
            .get(key)
            .map(Vec::as_slice)
            .ok_or_else(|| usage(format!("'{}' descriptor needs {key}=", self.kind)))
    }

    fn one(&self, key: &str) -> Result<&str, CliError> {
        match self.list(key)? {
            [v] => Ok(v),
            _ => Err(usage(format!("{key} takes a single value"))),
        }
    }

    fn scalar(&self, key: &str) -> Result<Scalar, CliError> {
        parse_scalar(self.one(key)?)
    }

    fn scalar_or_zero(&self, key: &str) -> Result<Scalar, CliError> {
        if self.values.contains_key(key) {
            self.scalar(key)
        } else {
            Ok(Scalar::zero())
        }
    }

    fn scalars(&self, key: &str) -> Result<Vec<Scalar>, CliError> {
        self.list(key)?.iter().map(|s| parse_scalar(s)).collect()
    }

    fn int<T: std::str::FromStr>(&self, key: &str) -> Result<T, CliError> {
        let v = self.one(key)?;
        v.parse()
            .map_err(|_| usage(format!("{key}={v} is not a valid integer")))
    }

    fn int_or<T: std::str::FromStr>(&self, key: &str, default: T) -> Result<T, CliError> {
        if self.values.contains_key(key) {
            self.int(key)
        } else {
            Ok(default)
        }
    }

    fn ints<T: std::str::FromStr>(&self, key: &str) -> Result<Vec<T>, CliError> {
        self.list(key)?
            .iter()
            .map(|v| {
                v.parse()
                    .map_err(|_| usage(format!("{key}: '{v}' is not a valid integer")))
            })
            .collect()
    }

    /// Rejects keys outside `allowed`.
    fn only(&self, allowed: &[&str]) -> Result<(), CliError> {
        match self.values.keys().find(|k| !allowed.contains(&k.as_str())) {
            Some(k) => Err(usage(format!("unknown key '{k}' for '{}'", self.kind))),
            None => Ok(()),
        }
    }

    fn no_head(&self) -> Result<(), CliError> {
        match self.head.first() {
            Some(t) => Err(usage(format!("unexpected '{t}' in '{}' descriptor", self.kind))),
            None => Ok(()),
        }
    }

    fn group(&self) -> Result<GroupSpec, CliError> {
        let rank = self.int("rank")?;
        let torsion: Vec<u64> = if self.values.contains_key("torsion") {
            self.ints("torsion")?
        } else {
            Vec::new()
        };
        if torsion.iter().any(|&t| t < 2) {
            return Err(usage("torsion orders must be at least 2"));
        }
        Ok(GroupSpec::new(rank, &torsion))
    }
}

pub fn parse_scalar(text: &str) -> Result<Scalar, CliError> {
    text.trim()
        .parse()
        .map_err(|_| usage(format!("'{text}' is not a rational number")))
}

/// Comma-separated rationals.
pub fn parse_scalar_list(text: &str) -> Result<Vec<Scalar>, CliError> {
    text.split(',').map(parse_scalar).collect()
}

/// `sym:dim=N`, `poly`, `laurent`, `group:rank=R[,torsion=…]`,
/// `mixed:rank=R[,torsion=…],dim=N`.
pub fn parse_ctx(text: &str) -> Result<AlgebraCtx, CliError> {
    let f = Fields::parse(text)?;
    f.no_head()?;
    match f.kind.as_str() {
        "sym" => {
            f.only(&["dim"])?;
            let dim: usize = f.int("dim")?;
            if dim == 0 {
                return Err(usage("dim must be positive"));
            }
            Ok(AlgebraCtx::symmetric(dim))
        }
        "poly" => {
            f.only(&[])?;
            Ok(AlgebraCtx::Polynomial)
        }
        "laurent" => {
            f.only(&[])?;
            Ok(AlgebraCtx::Laurent)
        }
        "group" => {
            f.only(&["rank", "torsion"])?;
            Ok(AlgebraCtx::Group(f.group()?))
        }
        "mixed" => {
            f.only(&["rank", "torsion", "dim"])?;
            Ok(AlgebraCtx::Mixed {
                group: f.group()?,
                dim: f.int("dim")?,
            })
        }
        other => Err(usage(format!("unknown context '{other}'"))),
    }
}

/// The descriptor accepted by [`parse_ctx`] for `ctx`.
pub fn ctx_descriptor(ctx: &AlgebraCtx) -> String {
    let torsion = |g: &GroupSpec| {
        if g.torsion.is_empty() {
            String::new()
        } else {
            let t: Vec<String> = g.torsion.iter().map(u64::to_string).collect();
            format!(",torsion={}", t.join(","))
        }
    };
    match ctx {
        AlgebraCtx::Symmetric { dim } => format!("sym:dim={dim}"),
        AlgebraCtx::Polynomial => "poly".into(),
        AlgebraCtx::Laurent => "laurent".into(),
        AlgebraCtx::Group(g) => format!("group:rank={}{}", g.rank, torsion(g)),
        AlgebraCtx::Mixed { group, dim } => {
            format!("mixed:rank={}{},dim={dim}", group.rank, torsion(group))
        }
    }
}

fn csv_rows(path: &Path) -> Result<Vec<Vec<String>>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(text.as_bytes());
    let mut rows = Vec::new();
    for rec in reader.records() {
        let rec = rec.map_err(|e| usage(format!("{}: {e}", path.display())))?;
        rows.push(rec.iter().map(str::to_string).collect());
    }
    Ok(rows)
}

fn row_error(path: &Path, line: usize, msg: impl std::fmt::Display) -> CliError {
    usage(format!("{} row {}: {msg}", path.display(), line + 1))
}

/// Reads `generator,h,value` rows (`h` as `g[…]`, usually quoted).
pub fn read_group_table(
    path: &Path,
    group: &GroupSpec,
    radius: Option<u32>,
) -> Result<GroupLambdaTable, CliError> {
    let ctx = AlgebraCtx::Group(group.clone());
    let mut entries = Vec::new();
    for (i, row) in csv_rows(path)?.into_iter().enumerate() {
        let [gen, h, v] = row.as_slice() else {
            return Err(row_error(path, i, "expected generator,h,value"));
        };
        let gen: usize = gen
            .parse()
            .map_err(|_| row_error(path, i, format!("bad generator index '{gen}'")))?;
        let h = parse_group_element(&ctx, h).map_err(|e| row_error(path, i, e))?;
        let v = parse_scalar(v).map_err(|e| row_error(path, i, e))?;
        entries.push((gen, h, v));
    }
    GroupLambdaTable::new(group, radius, entries).map_err(|e| usage(e.to_string()))
}

/// Reads `left,right,product` rows of basis elements and their product.
pub fn read_product_table(path: &Path, ctx: &AlgebraCtx) -> Result<ProductTable, CliError> {
    let mut t = ProductTable::new(ctx);
    for (i, row) in csv_rows(path)?.into_iter().enumerate() {
        let [l, r, v] = row.as_slice() else {
            return Err(row_error(path, i, "expected left,right,product"));
        };
        let l = basis_of(ctx, l).map_err(|e| row_error(path, i, e))?;
        let r = basis_of(ctx, r).map_err(|e| row_error(path, i, e))?;
        let v = parse_element(ctx, v).map_err(|e| row_error(path, i, e))?;
        t.insert(l, r, v).map_err(|e| row_error(path, i, e))?;
    }
    Ok(t)
}

/// Reads `monomial,value` rows of a map on basis elements.
pub fn read_basis_map(path: &Path, ctx: &AlgebraCtx) -> Result<BTreeMap<Basis, Element>, CliError> {
    let mut out = BTreeMap::new();
    for (i, row) in csv_rows(path)?.into_iter().enumerate() {
        let [b, v] = row.as_slice() else {
            return Err(row_error(path, i, "expected basis,value"));
        };
        let b = basis_of(ctx, b).map_err(|e| row_error(path, i, e))?;
        let v = parse_element(ctx, v).map_err(|e| row_error(path, i, e))?;
        if out.insert(b, v).is_some() {
            return Err(row_error(path, i, "duplicate entry"));
        }
    }
    Ok(out)
}

fn basis_of(ctx: &AlgebraCtx, text: &str) -> Result<Basis, String> {
    let e = parse_element(ctx, text).map_err(|e| e.to_string())?;
    match e.as_basis() {
        Some(b) if e.coefficient(b).is_one() => Ok(b.clone()),
        _ => Err(format!("'{text}' is not a basis element")),
    }
}

fn invalid(e: PreLieError) -> CliError {
    usage(e.to_string())
}

fn group_vector(group: &GroupSpec, f: &Fields, key: &str) -> Result<GroupElement, CliError> {
    let free: Vec<i64> = f.ints(key)?;
    let (free, torsion) = if free.len() == group.generator_count() {
        let (a, b) = free.split_at(group.rank);
        (a.to_vec(), b.to_vec())
    } else {
        (free, vec![0; group.torsion.len()])
    };
    group
        .element(free, torsion)
        .ok_or_else(|| usage(format!("{key} is not an element of the group")))
}

/// Parses a structure descriptor. `table` supplies the coefficient family
/// of `group` and `mixed` descriptors.
pub fn parse_structure(text: &str, table: Option<&Path>) -> Result<PreLieStructure, CliError> {
    let f = Fields::parse(text)?;
    let no_table = |kind: &str| match table {
        Some(_) => Err(usage(format!("'{kind}' descriptors take no --table"))),
        None => Ok(()),
    };
    match f.kind.as_str() {
        "svf" => {
            f.no_head()?;
            f.only(&["dim", "f", "lambda"])?;
            no_table("svf")?;
            let form = LinearForm::new(f.scalars("f")?);
            if f.values.contains_key("dim") && f.int::<usize>("dim")? != form.dim() {
                return Err(usage("dim does not match the length of f"));
            }
            PreLieStructure::sym_f_lambda(form, f.scalar_or_zero("lambda")?).map_err(invalid)
        }
        "kx" => {
            no_table("kx")?;
            let family = match f.head.as_slice() {
                [one] => one.as_str(),
                _ => return Err(usage("kx descriptors start with g1, g2, g3 or g4")),
            };
            match family {
                "g1" => {
                    f.only(&["N", "lambda", "a", "b"])?;
                    let (n, a, b) = (f.int("N")?, f.scalar("a")?, f.scalar("b")?);
                    if f.values.contains_key("lambda") {
                        PreLieStructure::kx_g1(n, f.scalar("lambda")?, a, b)
                    } else {
                        PreLieStructure::kx_g1_short(n, a, b)
                    }
                    .map_err(invalid)
                }
                "g2" | "g3" => {
                    f.only(&["N", "lambda", "mu"])?;
                    let args = (f.int("N")?, f.scalar_or_zero("lambda")?, f.scalar("mu")?);
                    if family == "g2" {
                        PreLieStructure::kx_g2(args.0, args.1, args.2)
                    } else {
                        PreLieStructure::kx_g3(args.0, args.1, args.2)
                    }
                    .map_err(invalid)
                }
                "g4" => {
                    f.only(&["lambda"])?;
                    Ok(PreLieStructure::kx_g4(f.scalar_or_zero("lambda")?))
                }
                other => Err(usage(format!("unknown K[X] family '{other}'"))),
            }
        }
        "gprime" => {
            f.no_head()?;
            f.only(&["lambda", "mu"])?;
            no_table("gprime")?;
            Ok(PreLieStructure::gprime(f.scalar("lambda")?, f.scalar("mu")?))
        }
        "group" => {
            f.no_head()?;
            f.only(&["rank", "torsion", "radius"])?;
            let group = f.group()?;
            let radius = f.values.contains_key("radius").then(|| f.int("radius")).transpose()?;
            let table = match table {
                Some(p) => read_group_table(p, &group, radius)?,
                None => GroupLambdaTable::zero(&group),
            };
            Ok(PreLieStructure::group_product(table))
        }
        "prop17" => {
            f.no_head()?;
            f.only(&["rank", "torsion", "morph", "g0"])?;
            no_table("prop17")?;
            let group = f.group()?;
            let morph = GroupMorphism::new(&group, f.scalars("morph")?).map_err(invalid)?;
            let g0 = group_vector(&group, &f, "g0")?;
            PreLieStructure::prop17(&morph, &g0).map_err(invalid)
        }
        "laurent2" => {
            f.no_head()?;
            f.only(&["k0", "a"])?;
            no_table("laurent2")?;
            PreLieStructure::laurent_case2(f.int("k0")?, f.scalar("a")?).map_err(invalid)
        }
        "laurent3" => {
            f.no_head()?;
            f.only(&["N", "alpha", "beta", "radius"])?;
            no_table("laurent3")?;
            PreLieStructure::laurent_case3(
                f.int("N")?,
                f.scalar("alpha")?,
                f.scalar("beta")?,
                f.int_or("radius", 8)?,
            )
            .map_err(invalid)
        }
        "mixed" => {
            f.no_head()?;
            f.only(&["rank", "torsion", "dim", "f", "lambda", "ml", "mm", "radius"])?;
            let group = f.group()?;
            let form = LinearForm::new(f.scalars("f")?);
            if f.values.contains_key("dim") && f.int::<usize>("dim")? != form.dim() {
                return Err(usage("dim does not match the length of f"));
            }
            let radius = f.int_or("radius", 3)?;
            let table = match table {
                Some(p) => read_group_table(p, &group, None)?,
                None => GroupLambdaTable::zero(&group),
            };
            let ml = GroupMorphism::new(&group, f.scalars("ml")?).map_err(invalid)?;
            let mm = GroupMorphism::new(&group, f.scalars("mm")?).map_err(invalid)?;
            PreLieStructure::mixed_t23(form, f.scalar_or_zero("lambda")?, table, ml, mm, radius)
                .map_err(invalid)
        }
        other => Err(usage(format!("unknown structure kind '{other}'"))),
    }
}

/// A structure descriptor, or `--ctx` plus a product table.
pub fn parse_target(
    structure: Option<&str>,
    ctx: Option<&str>,
    table: Option<&Path>,
) -> Result<Target, CliError> {
    match (structure, ctx) {
        (Some(_), Some(_)) => Err(usage("give either --structure or --ctx, not both")),
        (Some(s), None) => parse_structure(s, table).map(Target::Structure),
        (None, Some(c)) => {
            let ctx = parse_ctx(c)?;
            let path = table.ok_or_else(|| usage("--ctx needs a product --table"))?;
            read_product_table(path, &ctx).map(Target::Table)
        }
        (None, None) => Err(usage("one of --structure or --ctx is required")),
    }
}
