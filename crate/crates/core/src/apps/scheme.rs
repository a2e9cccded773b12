use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::diff::{DiffPoly, Ranking, RankingKind};
use crate::error::{Error, Result};
use crate::frontend::{parse_expression, Scope};
use crate::janet::janet_basis;
use crate::scalar::{RatFun, SymbolTable};

/// `dV/dx + dW/dy = 0` on a uniform grid.
///
/// Functions are indexed as in `functions`: the derivatives first, the
/// unknown `u` last. `keys[f]` holds the derivative orders `(x, y)` of
/// function `f`, `(0, 0)` for `u`. `v` and `w` only use unshifted terms; their
/// coefficients may depend on the grid indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConservationPDE {
    pub symbols: SymbolTable,
    pub functions: Vec<String>,
    pub keys: Vec<(u32, u32)>,
    pub v: DiffPoly,
    pub w: DiffPoly,
}

/// Mesh step symbols for the two axes, as symbol indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GridSpec {
    pub steps: (usize, usize),
}

/// Rectangle of `cells.0 x cells.1` grid cells with its corner at `(j, k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ContourSpec {
    pub cells: (u32, u32),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Quadrature {
    Midpoint,
    Trapezoid,
}

/// Rules for the contour edges along each axis and for the relations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuadraturePlan {
    pub contour_x: Quadrature,
    pub contour_y: Quadrature,
    pub relation: Quadrature,
    /// Cells spanned by each relation; `None` means one cell for the
    /// trapezoid rule and the contour extent along that axis for midpoint.
    pub relation_cells: Option<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
}

impl Axis {
    fn name(self) -> &'static str {
        match self {
            Axis::X => "x",
            Axis::Y => "y",
        }
    }
}

/// An exact relation `integral of f along axis over cells = g(end) - g(start)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IntegralRelation {
    pub integrand: usize,
    pub antiderivative: usize,
    pub axis: Axis,
    pub cells: u32,
}

impl ConservationPDE {
    pub fn num_functions(&self) -> usize {
        self.functions.len()
    }

    /// Index of the unknown itself.
    pub fn unknown(&self) -> usize {
        self.functions.len() - 1
    }

    fn function_with_key(&self, key: (u32, u32)) -> Option<usize> {
        self.keys.iter().position(|&k| k == key)
    }

    /// Elimination ranking: higher derivative orders first, `u` last.
    pub fn elimination_ranking(&self) -> Ranking {
        let mut order: Vec<usize> = (0..self.num_functions()).collect();
        order.sort_by_key(|&f| {
            let (a, b) = self.keys[f];
            (std::cmp::Reverse(a + b), std::cmp::Reverse(a), f)
        });
        Ranking::new(RankingKind::Elimination, order, vec![0, 1]).expect("permutation")
    }
}

fn used_functions(pde: &ConservationPDE) -> Vec<usize> {
    let mut fs: Vec<usize> = pde.v.functions().chain(pde.w.functions()).collect();
    fs.sort_unstable();
    fs.dedup();
    fs
}

/// One relation per derivative chain step, from every derivative occurring
/// in `V` or `W` down to `u`. A key `(a, b)` with `b > 0` is integrated
/// along `y` to `(a, b-1)`, otherwise along `x` to `(a-1, 0)`.
pub fn build_integral_relations(
    pde: &ConservationPDE,
    contour: &ContourSpec,
    plan: &QuadraturePlan,
) -> Result<Vec<IntegralRelation>> {
    let mut pending: Vec<usize> = used_functions(pde);
    let mut seen: Vec<usize> = Vec::new();
    let mut out = Vec::new();
    while let Some(f) = pending.pop() {
        if seen.contains(&f) {
            continue;
        }
        seen.push(f);
        let (a, b) = pde.keys[f];
        if (a, b) == (0, 0) {
            continue;
        }
        let (axis, lower) = if b > 0 {
            (Axis::Y, (a, b - 1))
        } else {
            (Axis::X, (a - 1, 0))
        };
        let g = pde.function_with_key(lower).ok_or_else(|| {
            Error::validation(
                "derivatives",
                format!(
                    "`{}` needs a function for the derivative of orders ({}, {})",
                    pde.functions[f], lower.0, lower.1
                ),
            )
        })?;
        let extent = match axis {
            Axis::X => contour.cells.0,
            Axis::Y => contour.cells.1,
        };
        let cells = plan.relation_cells.unwrap_or(match plan.relation {
            Quadrature::Trapezoid => 1,
            Quadrature::Midpoint => extent,
        });
        out.push(IntegralRelation {
            integrand: f,
            antiderivative: g,
            axis,
            cells,
        });
        pending.push(g);
    }
    out.sort_by_key(|r| (r.integrand, r.antiderivative));
    Ok(out)
}

fn offset(axis: Axis, along: u32, across: u32) -> [u32; 2] {
    match axis {
        Axis::X => [along, across],
        Axis::Y => [across, along],
    }
}

/// Quadrature of `p` along `axis` over `cells` cells from node 0, the
/// other coordinate held at `across`.
fn quadrature(
    p: &DiffPoly,
    rule: Quadrature,
    axis: Axis,
    cells: u32,
    across: u32,
    step: &RatFun,
) -> Result<DiffPoly> {
    let nsyms = p.nsyms();
    let mut out = DiffPoly::zero(nsyms);
    match rule {
        Quadrature::Trapezoid => {
            let half = step.checked_div(&RatFun::from_int(nsyms, 2))?;
            for i in 0..=cells {
                let w = if i == 0 || i == cells {
                    half.clone()
                } else {
                    step.clone()
                };
                out.add_scaled(&w, &p.apply_shift(&offset(axis, i, across)));
            }
        }
        Quadrature::Midpoint => {
            if !cells.is_multiple_of(2) || cells == 0 {
                return Err(Error::Parity {
                    axis: axis.name().to_string(),
                    cells,
                });
            }
            let w = step * &RatFun::from_int(nsyms, 2);
            for m in 0..cells / 2 {
                out.add_scaled(&w, &p.apply_shift(&offset(axis, 2 * m + 1, across)));
            }
        }
    }
    Ok(out)
}

/// The discrete contour equation followed by one equation per relation.
///
/// The contour integral of `-W dx + V dy` around the rectangle, traversed
/// counterclockwise, is `int (W(top) - W(bottom)) dx + int (V(right) -
/// V(left)) dy`.
pub fn discretize(
    pde: &ConservationPDE,
    grid: &GridSpec,
    contour: &ContourSpec,
    plan: &QuadraturePlan,
) -> Result<Vec<DiffPoly>> {
    let nsyms = pde.symbols.len();
    let hx = RatFun::var(nsyms, grid.steps.0);
    let hy = RatFun::var(nsyms, grid.steps.1);
    let (sx, sy) = contour.cells;
    if sx == 0 || sy == 0 {
        return Err(Error::validation(
            "contour",
            "extents must be at least one cell",
        ));
    }
    let relations = build_integral_relations(pde, contour, plan)?;
    let mut system = Vec::new();
    if pde.v.is_zero() && pde.w.is_zero() {
        return Ok(system);
    }

    let one = RatFun::one(nsyms);
    let minus = RatFun::from_int(nsyms, -1);
    let mut eq = quadrature(&pde.w, plan.contour_x, Axis::X, sx, sy, &hx)?;
    eq.add_scaled(
        &minus,
        &quadrature(&pde.w, plan.contour_x, Axis::X, sx, 0, &hx)?,
    );
    eq.add_scaled(
        &one,
        &quadrature(&pde.v, plan.contour_y, Axis::Y, sy, sx, &hy)?,
    );
    eq.add_scaled(
        &minus,
        &quadrature(&pde.v, plan.contour_y, Axis::Y, sy, 0, &hy)?,
    );
    system.push(eq);

    for rel in relations {
        let step = match rel.axis {
            Axis::X => &hx,
            Axis::Y => &hy,
        };
        let integrand = DiffPoly::term(
            crate::diff::DiffTerm::new(rel.integrand, [0, 0]),
            one.clone(),
        );
        let anti = DiffPoly::term(
            crate::diff::DiffTerm::new(rel.antiderivative, [0, 0]),
            one.clone(),
        );
        let mut eq = quadrature(&integrand, plan.relation, rel.axis, rel.cells, 0, step)?;
        eq.add_scaled(&minus, &anti.apply_shift(&offset(rel.axis, rel.cells, 0)));
        eq.add_scaled(&one, &anti);
        system.push(eq);
    }
    Ok(system)
}

/// Members of the reduced Groebner basis that only involve `keep`.
pub fn generate_scheme(
    system: &[DiffPoly],
    keep: usize,
    ranking: &Ranking,
) -> Result<Vec<DiffPoly>> {
    if system.is_empty() {
        return Ok(Vec::new());
    }
    let basis = janet_basis(system, ranking)?;
    Ok(basis
        .reduced_groebner_basis()
        .into_iter()
        .filter(|p| p.functions().all(|f| f == keep))
        .collect())
}

/// On-disk layout of a scheme problem.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PdeFile {
    /// Grid index names along x and y.
    pub indices: [String; 2],
    /// Mesh step symbols along x and y.
    pub steps: [String; 2],
    #[serde(default)]
    pub parameters: Vec<String>,
    pub unknown: String,
    /// Derivative function names with their orders in x and y.
    #[serde(default)]
    pub derivatives: BTreeMap<String, [u32; 2]>,
    #[serde(rename = "V")]
    pub v: String,
    #[serde(rename = "W")]
    pub w: String,
    pub contour: [u32; 2],
    pub quadrature: QuadratureFile,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadratureFile {
    pub contour_x: Quadrature,
    pub contour_y: Quadrature,
    pub relation: Quadrature,
    #[serde(default)]
    pub relation_cells: Option<u32>,
}

/// Everything needed to run [`discretize`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchemeProblem {
    pub pde: ConservationPDE,
    pub grid: GridSpec,
    pub contour: ContourSpec,
    pub plan: QuadraturePlan,
}

impl SchemeProblem {
    pub fn from_file(file: &PdeFile) -> Result<Self> {
        let mut params: Vec<String> = file.steps.to_vec();
        for p in &file.parameters {
            if !params.contains(p) {
                params.push(p.clone());
            }
        }
        if file.steps[0] == file.steps[1] {
            params.remove(1);
        }
        let symbols = SymbolTable::new(file.indices.iter().cloned(), params)?;
        let mut functions: Vec<String> = Vec::new();
        let mut keys = Vec::new();
        for (name, [a, b]) in &file.derivatives {
            if a + b == 0 {
                return Err(Error::validation(
                    format!("derivatives.{name}"),
                    "a derivative needs a positive order",
                ));
            }
            if keys.contains(&(*a, *b)) {
                return Err(Error::validation(
                    format!("derivatives.{name}"),
                    "duplicate derivative orders",
                ));
            }
            functions.push(name.clone());
            keys.push((*a, *b));
        }
        if functions.contains(&file.unknown) {
            return Err(Error::validation(
                "unknown",
                "also declared as a derivative",
            ));
        }
        functions.push(file.unknown.clone());
        keys.push((0, 0));
        for (i, f) in functions.iter().enumerate() {
            if !crate::scalar::is_identifier(f) || symbols.index_of(f).is_some() {
                return Err(Error::validation(
                    format!("functions[{i}]"),
                    format!("`{f}` clashes or is invalid"),
                ));
            }
        }
        let scope = Scope::new(&symbols, &functions);
        let parse_flux = |src: &str, path: &str| -> Result<DiffPoly> {
            let p = parse_expression(src, scope)?;
            if p.terms().any(|(t, _)| t.degree() != 0) {
                return Err(Error::validation(
                    path,
                    "flux terms must be unshifted, e.g. `ux(j,k)`",
                ));
            }
            if !p.constant().is_zero() {
                return Err(Error::validation(
                    path,
                    "flux must be linear in the unknowns without a source",
                ));
            }
            Ok(p)
        };
        let v = parse_flux(&file.v, "V")?;
        let w = parse_flux(&file.w, "W")?;
        let grid = GridSpec {
            steps: (
                symbols.index_of(&file.steps[0]).expect("declared"),
                symbols.index_of(&file.steps[1]).expect("declared"),
            ),
        };
        let contour = ContourSpec {
            cells: (file.contour[0], file.contour[1]),
        };
        let plan = QuadraturePlan {
            contour_x: file.quadrature.contour_x,
            contour_y: file.quadrature.contour_y,
            relation: file.quadrature.relation,
            relation_cells: file.quadrature.relation_cells,
        };
        Ok(Self {
            pde: ConservationPDE {
                symbols,
                functions,
                keys,
                v,
                w,
            },
            grid,
            contour,
            plan,
        })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: PdeFile =
            serde_json::from_str(text).map_err(|e| Error::validation("<pde>", e.to_string()))?;
        Self::from_file(&file)
    }

    /// Reads and validates a scheme problem file.
    pub fn load(path: impl AsRef<std::path::Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        let file: PdeFile = serde_json::from_str(&text)
            .map_err(|e| Error::validation(path.display().to_string(), e.to_string()))?;
        Self::from_file(&file)
    }

    pub fn discretize(&self) -> Result<Vec<DiffPoly>> {
        discretize(&self.pde, &self.grid, &self.contour, &self.plan)
    }

    /// Discretizes and eliminates every derivative function.
    pub fn scheme(&self) -> Result<Vec<DiffPoly>> {
        let system = self.discretize()?;
        generate_scheme(&system, self.pde.unknown(), &self.pde.elimination_ranking())
    }
}
