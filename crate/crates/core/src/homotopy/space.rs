use crate::dgmod::{BlockLayout, Carrier, ModuleError, SemifreeModule};
use crate::exactlin::{
    solve_sparse, Echelon, Field, SpanSolver, SparseMatrix, SparseVec, Subspace,
};

/// Degree-0 maps `M → X` from a semifree source into a carrier, as a slice
/// of the Hom complex.
///
/// A map is determined by the images `f(e_λ) ∈ X_{|e_λ|}`; its coordinate
/// vector concatenates them block by block. Homotopies `h` are stored the
/// same way with `h(e_λ) ∈ X_{|e_λ|+1}`.
#[derive(Clone, Debug)]
pub struct HomSpace {
    field: Field,
    map_layout: BlockLayout,
    homotopy_layout: BlockLayout,
    constraints: SparseMatrix,
    boundary: SparseMatrix,
    cycles: Subspace,
    boundary_rank: usize,
    classes: Vec<SparseVec>,
    class_solver: SpanSolver,
}

/// An `h` with `f = ∂h + h∂`, one image per source basis element.
#[derive(Clone, Debug, PartialEq)]
pub struct HomotopyWitness {
    pub images: Vec<SparseVec>,
    pub vector: SparseVec,
}

fn block_sizes(
    source: &SemifreeModule,
    target: &dyn Carrier,
    offset: i64,
) -> Result<BlockLayout, ModuleError> {
    let sizes = source
        .degrees()
        .iter()
        .map(|&d| target.dim(d + offset))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(BlockLayout::from_sizes(sizes))
}

/// Columns of the operator `g ↦ ∂g ± g∂` on maps of degree `offset`:
/// the image of `x` placed at `e_λ` is `∂x` at `e_λ` plus `sign·x·b_{λλ'}` at `e_λ'`.
fn operator_columns(
    source: &SemifreeModule,
    target: &dyn Carrier,
    offset: i64,
    negate_tail: bool,
) -> Result<(BlockLayout, BlockLayout, Vec<SparseVec>), ModuleError> {
    let field = target.algebra().field();
    let dom = block_sizes(source, target, offset)?;
    let cod = block_sizes(source, target, offset - 1)?;
    let tail_sign = field.one().signed(negate_tail);
    let mut cols = Vec::with_capacity(dom.total());
    for lambda in 0..source.rank() {
        let d = source.degree(lambda) + offset;
        let users: Vec<(usize, &crate::dgalg::Element)> = (0..source.rank())
            .filter_map(|l2| source.entry(lambda, l2).map(|b| (l2, b)))
            .collect();
        for i in 0..dom.size(lambda) {
            let mut col = target.diff_basis(d, i)?.shifted(cod.start(lambda));
            let x = SparseVec::unit(i, field);
            for &(l2, b) in &users {
                let xb = target.act(d, &x, b)?;
                col.add_scaled(&xb.shifted(cod.start(l2)), &tail_sign);
            }
            cols.push(col);
        }
    }
    Ok((dom, cod, cols))
}

impl HomSpace {
    pub fn new(source: &SemifreeModule, target: &dyn Carrier) -> Result<HomSpace, ModuleError> {
        let field = target.algebra().field();
        let (map_layout, cod, ccols) = operator_columns(source, target, 0, true)?;
        let constraints = SparseMatrix::from_columns(field, cod.total(), &ccols)?;
        let cycles = Subspace::kernel_of(&constraints);
        let (homotopy_layout, _, bcols) = operator_columns(source, target, 1, false)?;
        let boundary = SparseMatrix::from_columns(field, map_layout.total(), &bcols)?;
        let mut ech = Echelon::new(field, map_layout.total());
        for c in &bcols {
            ech.insert(c.clone());
        }
        let boundary_rank = ech.rank();
        let mut classes = Vec::new();
        for z in cycles.basis() {
            if ech.insert(z.clone()) {
                classes.push(z.clone());
            }
        }
        let mut family = classes.clone();
        family.extend(bcols);
        let class_solver = SpanSolver::new(field, map_layout.total(), &family);
        Ok(HomSpace {
            field,
            map_layout,
            homotopy_layout,
            constraints,
            boundary,
            cycles,
            boundary_rank,
            classes,
            class_solver,
        })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Blocks of a map vector, one per source basis element.
    pub fn map_layout(&self) -> &BlockLayout {
        &self.map_layout
    }

    pub fn homotopy_layout(&self) -> &BlockLayout {
        &self.homotopy_layout
    }

    /// Matrix whose kernel is the space of chain maps.
    pub fn constraints(&self) -> &SparseMatrix {
        &self.constraints
    }

    /// Matrix sending a homotopy `h` to `∂h + h∂`.
    pub fn boundary_operator(&self) -> &SparseMatrix {
        &self.boundary
    }

    pub fn cycles(&self) -> &Subspace {
        &self.cycles
    }

    pub fn cycle_dim(&self) -> usize {
        self.cycles.dim()
    }

    pub fn boundary_dim(&self) -> usize {
        self.boundary_rank
    }

    /// `dim Hom_𝒦`.
    pub fn dim(&self) -> usize {
        self.classes.len()
    }

    /// Chain maps whose classes form a basis of `Hom_𝒦`.
    pub fn class_representatives(&self) -> &[SparseVec] {
        &self.classes
    }

    pub fn is_chain_map(&self, f: &SparseVec) -> bool {
        self.constraints.mul_vec(f).is_zero()
    }

    /// Coordinates of the class of `f` in the representative basis; `None`
    /// when `f` is not a chain map.
    pub fn class_coords(&self, f: &SparseVec) -> Option<SparseVec> {
        if !self.is_chain_map(f) {
            return None;
        }
        let y = self.class_solver.coordinates(f)?;
        Some(y.slice(0, self.classes.len()))
    }

    /// Concatenates per-generator images into a map vector.
    pub fn assemble(&self, images: &[SparseVec]) -> SparseVec {
        let mut v = SparseVec::new();
        for (l, x) in images.iter().enumerate() {
            v.add_scaled(&x.shifted(self.map_layout.start(l)), &self.field.one());
        }
        v
    }

    pub fn split(&self, v: &SparseVec) -> Vec<SparseVec> {
        split_blocks(&self.map_layout, v)
    }

    /// Solves `∂h + h∂ = f`, free coordinates set to zero, and rechecks the
    /// equation before returning.
    pub fn null_homotopy(&self, f: &SparseVec) -> Result<Option<HomotopyWitness>, ModuleError> {
        let Some(h) = solve_sparse(&self.boundary, f)? else {
            return Ok(None);
        };
        if &self.boundary.mul_vec(&h) != f {
            return Err(crate::exactlin::LinalgError::VerificationFailed.into());
        }
        Ok(Some(HomotopyWitness {
            images: split_blocks(&self.homotopy_layout, &h),
            vector: h,
        }))
    }
}

pub(crate) fn split_blocks(layout: &BlockLayout, v: &SparseVec) -> Vec<SparseVec> {
    (0..layout.blocks())
        .map(|l| v.slice(layout.start(l), layout.size(l)))
        .collect()
}

/// Recomputes `∂h(e_λ) + Σ_μ h(e_μ)·b_{μλ}` directly and compares with `f(e_λ)`.
pub fn verify_homotopy(
    source: &SemifreeModule,
    target: &dyn Carrier,
    f: &[SparseVec],
    h: &[SparseVec],
) -> Result<bool, ModuleError> {
    for lambda in 0..source.rank() {
        let d = source.degree(lambda);
        let mut lhs = target.diff(d + 1, &h[lambda])?;
        for (&mu, b) in source.column(lambda) {
            lhs.add_scaled(
                &target.act(source.degree(mu) + 1, &h[mu], b)?,
                &target.algebra().field().one(),
            );
        }
        if lhs != f[lambda] {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Recomputes `∂f(e_λ) = Σ_μ f(e_μ)·b_{μλ}` directly.
pub fn verify_chain_map(
    source: &SemifreeModule,
    target: &dyn Carrier,
    f: &[SparseVec],
) -> Result<bool, ModuleError> {
    for lambda in 0..source.rank() {
        let lhs = target.diff(source.degree(lambda), &f[lambda])?;
        let mut rhs = SparseVec::new();
        for (&mu, b) in source.column(lambda) {
            rhs.add_scaled(
                &target.act(source.degree(mu), &f[mu], b)?,
                &target.algebra().field().one(),
            );
        }
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}
