//! From models to sextics: budgets, the maximality certificate, van Kampen
//! presentations and the classification table.

use serde::Serialize;

use crate::error::PipelineError;
use crate::error::GroupError;
use crate::fpgroup::{derived_data, AbelianInvariants, EnumOptions, Presentation};
use crate::map::{Color, FiberFlag};
use crate::model::{deformation_classes, enumerate_e7_models_unfiltered, Model};
use crate::monodromy::{braid_relators, infinity_package, reference_candidates, rel, Branch, EType, GammaVertex, Monodromy};
use crate::singularity::{SingularitySet, SingularityType};
use crate::word::FreeWord;

/// Vertex counts and the equalities that make a model maximal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MaximalityCertificate {
    /// k of the skeleton's own trigonal curve (before lifting triple points).
    pub k_prime: i64,
    pub black: i64,
    /// Singular white vertices plus one midpoint per black–black edge.
    pub white: i64,
    pub white_odd: i64,
    pub black_1mod3: i64,
    pub black_2mod3: i64,
    /// Total Milnor number of the skeleton's curve.
    pub mu_skeleton: i64,
    pub unstable_skeleton: i64,
    /// μ of the trigonal model with the E₇ point replaced.
    pub mu_bar: i64,
    pub mu: i64,
    pub unstable: i64,
    pub multiplicity_sum: u32,
}

/// Checks the vertex-count (in)equalities and the μ bound; every equality
/// must hold for a maximal model.
pub fn check_maximality(model: &Model) -> Result<MaximalityCertificate, PipelineError> {
    let m = model.map();
    let mut c = MaximalityCertificate {
        k_prime: 0,
        black: 0,
        white: 0,
        white_odd: 0,
        black_1mod3: 0,
        black_2mod3: 0,
        mu_skeleton: 0,
        unstable_skeleton: model.singular_vertex_count() as i64,
        mu_bar: 0,
        mu: 0,
        unstable: 0,
        multiplicity_sum: model.multiplicity_sum(),
    };
    for v in 0..m.vertex_count() {
        let val = m.valency(v) as i64;
        match m.color(v) {
            Color::Black => {
                c.black += 1;
                match val % 3 {
                    1 => c.black_1mod3 += 1,
                    2 => c.black_2mod3 += 1,
                    _ => {}
                }
            }
            Color::White => {
                c.white += 1;
                if val % 2 == 1 {
                    c.white_odd += 1;
                }
            }
        }
    }
    c.white += m.edges().iter().filter(|&&(a, b)| m.dart_color(a) == Color::Black && m.dart_color(b) == Color::Black).count() as i64;
    let regions = model.regions();
    // Σ fiber multiplicities of the skeleton's curve is 6k'; singular
    // vertices contribute 2 (valency 1), 4 (valency 2), 3 (white)
    let mut mult: i64 = regions.iter().map(|r| r.black_corners as i64).sum();
    for v in 0..m.vertex_count() {
        mult += match (m.color(v), m.valency(v)) {
            (Color::Black, 1) => 2,
            (Color::Black, 2) => 4,
            (Color::White, 1) => 3,
            _ => 0,
        };
    }
    if mult % 6 != 0 {
        return Err(PipelineError::NotMaximal(format!("fiber multiplicities of the skeleton sum to {mult}, not a multiple of 6")));
    }
    c.k_prime = mult / 6;
    c.mu_skeleton = regions.iter().map(|r| r.black_corners as i64 - 1).sum::<i64>() + c.white_odd + 2 * c.black_2mod3;

    let ncross = c.black + c.white + c.white_odd + 2 * c.black_2mod3 - 2;
    if c.mu_skeleton != ncross {
        return Err(PipelineError::NotMaximal(format!(
            "crossing count: μ' = {} but #black + #white + #white(1 mod 2) + 2·#black(2 mod 3) − 2 = {ncross}",
            c.mu_skeleton
        )));
    }
    let rhs2 = c.black + c.white_odd + c.black_2mod3;
    if 2 * c.k_prime != rhs2 {
        return Err(PipelineError::NotMaximal(format!("2k' = {} > {rhs2} (black vertex inequality is strict)", 2 * c.k_prime)));
    }
    let rhs3 = c.white + c.black_1mod3 + c.white_odd + 2 * c.black_2mod3;
    if 3 * c.k_prime != rhs3 {
        return Err(PipelineError::NotMaximal(format!("3k' = {} ≠ {rhs3} (white vertex inequality is strict)", 3 * c.k_prime)));
    }
    let bound = 5 * c.k_prime - 2 - c.unstable_skeleton;
    if c.mu_skeleton != bound {
        return Err(PipelineError::NotMaximal(format!("μ' = {} but 5k' − 2 − #unstable = {bound}", c.mu_skeleton)));
    }

    let d_flags = regions.iter().filter(|r| r.fiber_flag == FiberFlag::D).count() as i64;
    c.mu_bar = c.mu_skeleton + 6 * c.unstable_skeleton + 5 * d_flags;
    c.mu = model.singularity_set().milnor() as i64;
    if c.mu != c.mu_bar + 6 {
        return Err(PipelineError::MilnorBudgetViolated(c.mu as u32));
    }
    if c.mu_bar != 5 * 3 - 2 - c.unstable || c.mu != 19 {
        return Err(PipelineError::MilnorBudgetViolated(c.mu as u32));
    }
    if c.multiplicity_sum != 18 {
        return Err(PipelineError::MultiplicityBudgetViolated(c.multiplicity_sum));
    }
    Ok(c)
}

/// A van Kampen presentation together with the choices that produced it.
#[derive(Debug, Clone)]
pub struct Assembled {
    pub presentation: Presentation,
    pub monodromy: Monodromy,
    pub omitted: GammaVertex,
}

/// Presentation from the braid monodromy of a model, with the default
/// reference dart and the singular fiber with the smallest dart omitted.
pub fn assemble_presentation(model: &Model) -> Presentation {
    let h0 = reference_candidates(model)[0];
    assemble_with(model, h0, None).presentation
}

/// As [`assemble_presentation`] with an explicit reference dart and omitted
/// fiber (`None`: smallest dart).
pub fn assemble_with(model: &Model, reference: usize, omit: Option<GammaVertex>) -> Assembled {
    let mono = Monodromy::with_reference(model, reference);
    let singular: Vec<_> = mono.singular_lassos().collect();
    let omitted = omit.unwrap_or_else(|| singular.iter().min_by_key(|l| l.dart).map(|l| l.vertex).expect("a singular fiber"));
    let mut relators = Vec::new();
    for l in &singular {
        if l.vertex != omitted {
            relators.extend(braid_relators(&l.monodromy()));
        }
    }
    let pkg = infinity_package(EType::E7, Some(mono.branch)).expect("branch given");
    relators.extend(pkg.relators);
    Assembled { presentation: Presentation::new(3, relators), monodromy: mono, omitted }
}

/// Which of the two distinguished-branch variants of a row to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Variant {
    Primary,
    Alternate,
}

/// How a row's group is described by hand-derived relations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RelationFamily {
    /// The nonabelian group of the first row.
    Special,
    /// A loop next to the bigon: the group is a quotient of an abelian one.
    PlusLoop,
    /// A triangle next to the bigon.
    Leaf,
    /// Two heptagons next to the bigon.
    TwoHeptagons,
    /// No trivalent vertex: relations of an E₆-point fiber.
    E6Fiber,
}

/// One row of the classification of maximal sets with an E₇ point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RowSpec {
    pub row: usize,
    pub set: &'static str,
    /// Both choices of the distinguished branch give distinct models.
    pub starred: bool,
    pub figure: &'static str,
    pub count: (usize, usize),
    pub family: RelationFamily,
    /// m for the odd (2m+1)-gon next to the bigon that enters the relations.
    pub leaf: usize,
    pub s_perp: (i64, i64, i64),
    pub order: usize,
}

pub const ROWS: [RowSpec; 11] = [
    row(1, "E7+2A4+2A2", false, "(a)", (1, 0), RelationFamily::Special, 2, (15, 0, 15), 41040),
    row(2, "E7+A12", true, "(b)1", (0, 1), RelationFamily::PlusLoop, 6, (7, 2, 2), 6),
    row(3, "E7+A10+A2", true, "(b)2", (2, 0), RelationFamily::Leaf, 5, (11, 0, 3), 6),
    row(4, "E7+2A6", false, "(c)1,1̄", (0, 1), RelationFamily::TwoHeptagons, 3, (7, 0, 7), 6),
    row(5, "E7+A8+A4", true, "(c)2", (0, 1), RelationFamily::PlusLoop, 4, (23, 2, 2), 6),
    row(6, "E7+A6+A4+A2", true, "(c)3", (2, 0), RelationFamily::Leaf, 3, (35, 0, 3), 6),
    row(7, "E7+E6+A6", true, "(d)1", (0, 1), RelationFamily::PlusLoop, 3, (11, 2, 2), 6),
    row(8, "E7+E6+A4+A2", true, "(d)2", (2, 0), RelationFamily::Leaf, 2, (15, 0, 3), 6),
    row(9, "E7+E8+2A2", false, "(e)", (1, 0), RelationFamily::Leaf, 1, (3, 0, 3), 6),
    row(10, "E7+2E6", false, "(f)", (1, 0), RelationFamily::E6Fiber, 0, (3, 0, 3), 6),
    row(11, "E7+E8+A4", true, "(g)", (0, 1), RelationFamily::PlusLoop, 2, (3, 2, 2), 6),
];

#[allow(clippy::too_many_arguments)]
const fn row(
    row: usize,
    set: &'static str,
    starred: bool,
    figure: &'static str,
    count: (usize, usize),
    family: RelationFamily,
    leaf: usize,
    s_perp: (i64, i64, i64),
    order: usize,
) -> RowSpec {
    RowSpec { row, set, starred, figure, count, family, leaf, s_perp, order }
}

pub fn row_spec(row: usize) -> Result<&'static RowSpec, PipelineError> {
    ROWS.get(row.wrapping_sub(1)).ok_or(PipelineError::UnknownRow(row))
}

fn a(k: usize) -> FreeWord {
    FreeWord::gen(k)
}

fn w(v: &[i32]) -> FreeWord {
    FreeWord::from_letters(v.iter().copied())
}

/// `(xy)^m x = y(xy)^m` (odd region, 2m+1 corners) as a relator.
pub fn leaf_relator(x: &FreeWord, y: &FreeWord, m: usize) -> FreeWord {
    let xy = x.mul(y).pow(m as i64);
    rel(&xy.mul(x), &y.mul(&xy))
}

/// `(xy)^m = (yx)^m` (even region, 2m corners) as a relator.
pub fn even_relator(x: &FreeWord, y: &FreeWord, m: usize) -> FreeWord {
    rel(&x.mul(y).pow(m as i64), &y.mul(x).pow(m as i64))
}

/// Relation of a region with `corners` corners seen from a vertex whose
/// generators toward the region are `x`, `y`.
pub fn region_relator(x: &FreeWord, y: &FreeWord, corners: usize) -> FreeWord {
    if corners % 2 == 1 {
        leaf_relator(x, y, corners / 2)
    } else {
        even_relator(x, y, corners / 2)
    }
}

/// The E₇ package relations with α₂ distinguished.
pub fn e7_relators() -> Vec<FreeWord> {
    infinity_package(EType::E7, Some(Branch::Alpha2)).unwrap().relators
}

/// The E₇ package relations with α₃ distinguished.
pub fn e7_alt_relators() -> Vec<FreeWord> {
    infinity_package(EType::E7, Some(Branch::Alpha3)).unwrap().relators
}

/// The relation through the cusp triangle of the first row.
pub fn cusp_relator() -> FreeWord {
    let c = a(3).conj_by(&a(1));
    rel(&c.mul(&a(2)).mul(&c), &a(2).mul(&c).mul(&a(2)))
}

/// Index of [`cusp_relator`] in [`paper_relations`] for row 1.
pub const CUSP_RELATOR_INDEX: usize = 8;

/// The group of the first row.
pub fn row1_relators() -> Vec<FreeWord> {
    let mut r = e7_relators();
    r.push(cusp_relator());
    r.push(leaf_relator(&a(1), &a(2), 2));
    r.push(leaf_relator(&a(1), &a(3), 2));
    r
}

/// The group of a skeleton with a loop next to the bigon: the E₇ package and
/// the relation of the monogon inside the loop. Returns the relators and the
/// distinguished generator.
pub fn plus_loop_relators(branch: Branch) -> (Vec<FreeWord>, FreeWord) {
    match branch {
        Branch::Alpha2 => {
            let mut r = e7_relators();
            r.push(rel(&a(2).conj_by(&a(1).inverse()), &a(3)));
            (r, a(2))
        }
        Branch::Alpha3 => {
            let mut r = e7_alt_relators();
            r.push(rel(&a(3).conj_by(&a(1).inverse()), &a(2)));
            (r, a(3))
        }
    }
}

/// Hand-derived relations for a table row.
pub fn paper_relations(row: usize, variant: Variant) -> Result<Presentation, PipelineError> {
    let spec = row_spec(row)?;
    let alt = variant == Variant::Alternate && spec.starred;
    let r = match spec.family {
        RelationFamily::Special => row1_relators(),
        RelationFamily::PlusLoop => {
            // the loop group has abelianization Z + Z3; the odd region around
            // the loop makes it cyclic, hence the group abelian
            let (mut r, x) = plus_loop_relators(if alt { Branch::Alpha3 } else { Branch::Alpha2 });
            r.push(leaf_relator(&a(1), &x, spec.leaf));
            r
        }
        RelationFamily::Leaf => {
            let (m, n) = if alt { (1, spec.leaf) } else { (spec.leaf, 1) };
            let mut r = e7_relators();
            r.push(leaf_relator(&a(1), &a(2), m));
            r.push(leaf_relator(&a(1), &a(3), n));
            r
        }
        RelationFamily::TwoHeptagons => {
            let mut r = e7_relators();
            r.push(leaf_relator(&a(1), &a(2), 3));
            r.push(leaf_relator(&a(1), &a(3), 3));
            r.push(rel(&a(1), &a(3).conj_by(&w(&[2, 1]))));
            r
        }
        RelationFamily::E6Fiber => {
            let mut r = e7_relators();
            r.push(rel(&w(&[2, 1, 2, 3]), &w(&[1, 2, 3, 1])));
            r.push(rel(&w(&[3, 1, 2, 3]), &w(&[1, 2, 3, 2])));
            r
        }
    };
    Ok(Presentation::new(3, r))
}

/// Budget check of one model; fails with the violated invariant.
pub fn check_budgets(model: &Model) -> Result<MaximalityCertificate, PipelineError> {
    let cert = check_maximality(model)?;
    let forbidden = model.singularity_set().forbidden_with_e7();
    if !forbidden.is_empty() {
        let s: Vec<String> = forbidden.iter().map(|p| p.to_string()).collect();
        return Err(PipelineError::NotMaximal(format!("points {} are impossible on an irreducible sextic", s.join(", "))));
    }
    Ok(cert)
}

#[derive(Debug, Clone, Serialize)]
pub struct ModelReport {
    pub index: usize,
    pub real: bool,
    pub certificate: MaximalityCertificate,
    pub group_order: usize,
    #[serde(flatten)]
    pub model: ModelSummary,
}

#[derive(Debug, Clone, Serialize)]
pub struct ModelSummary {
    pub set: SingularitySet,
    pub skeleton: String,
    pub branch: usize,
    pub d_faces: Vec<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassificationRow {
    pub row: usize,
    pub set: SingularitySet,
    pub figure: String,
    pub starred: bool,
    pub real: usize,
    pub complex_pairs: usize,
    pub group_order: usize,
    pub s_perp: (i64, i64, i64),
    pub models: Vec<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Classification {
    pub rows: Vec<ClassificationRow>,
    pub total_classes: usize,
    pub models: Vec<ModelReport>,
    /// Models dropped by the singular-point filter (expected empty).
    pub filtered: Vec<SingularitySet>,
}

/// Enumerates all models, checks their budgets, computes their groups and
/// groups them into the table rows.
pub fn classify_e7(opts: EnumOptions) -> Result<Classification, PipelineError> {
    let all = enumerate_e7_models_unfiltered();
    let mut filtered = Vec::new();
    let mut models = Vec::new();
    for m in all {
        if m.singularity_set().forbidden_with_e7().is_empty() {
            models.push(m);
        } else {
            filtered.push(m.singularity_set());
        }
    }
    let mut reports = Vec::new();
    for (index, m) in models.iter().enumerate() {
        let certificate = check_budgets(m)?;
        let group_order = assemble_presentation(m).order(opts)?;
        reports.push(ModelReport {
            index,
            real: m.is_real(),
            certificate,
            group_order,
            model: summary(m),
        });
    }
    let classes = deformation_classes(&models);
    let mut rows = Vec::new();
    for c in &classes {
        let name = c.set.to_string();
        let spec = ROWS.iter().find(|r| r.set == name);
        let group_order = c.models.iter().map(|&i| reports[i].group_order).max().unwrap_or(0);
        rows.push(ClassificationRow {
            row: spec.map_or(0, |s| s.row),
            set: c.set.clone(),
            figure: spec.map_or(String::new(), |s| s.figure.to_string()),
            starred: spec.is_some_and(|s| s.starred),
            real: c.real,
            complex_pairs: c.complex_pairs,
            group_order,
            s_perp: spec.map_or((0, 0, 0), |s| s.s_perp),
            models: c.models.clone(),
        });
    }
    // table order; unknown sets last
    rows.sort_by_key(|r| if r.row == 0 { usize::MAX } else { r.row });
    let total_classes = rows.iter().map(|r| r.real + 2 * r.complex_pairs).sum();
    Ok(Classification { rows, total_classes, models: reports, filtered })
}

pub fn summary(m: &Model) -> ModelSummary {
    ModelSummary {
        set: m.singularity_set(),
        skeleton: m.map().to_string(),
        branch: m.branch(),
        d_faces: m.d_faces().to_vec(),
    }
}

/// Models of the given table row (in enumeration order).
pub fn row_models(row: usize) -> Result<Vec<Model>, PipelineError> {
    let spec = row_spec(row)?;
    Ok(crate::model::enumerate_e7_models().into_iter().filter(|m| m.singularity_set().to_string() == spec.set).collect())
}

/// The singular point types of a set other than the E₇ point.
pub fn residual_points(set: &SingularitySet) -> Vec<SingularityType> {
    set.without(SingularityType::E(7)).points().to_vec()
}

/// The facts certified for the nonabelian group of the first row.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Row1Facts {
    pub order: usize,
    pub abelianization: AbelianInvariants,
    pub derived_order: usize,
    pub derived_perfect: bool,
    pub alpha1_order: usize,
    pub index_alpha1_alpha2: usize,
    pub index_alpha1_alpha3: usize,
    /// Order with the cusp-triangle relation dropped.
    pub order_without_cusp: usize,
}

pub fn row1_facts(opts: EnumOptions) -> Result<Row1Facts, GroupError> {
    let g = Presentation::new(3, row1_relators());
    let d = derived_data(&g, opts)?;
    let mut rels = row1_relators();
    rels.remove(CUSP_RELATOR_INDEX);
    Ok(Row1Facts {
        order: d.order,
        abelianization: d.abelianization,
        derived_order: d.derived_order,
        derived_perfect: d.derived_perfect,
        alpha1_order: g.element_order(&a(1), opts)?,
        index_alpha1_alpha2: g.index(&[a(1), a(2)], opts)?,
        index_alpha1_alpha3: g.index(&[a(1), a(3)], opts)?,
        order_without_cusp: Presentation::new(3, rels).order(opts)?,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct AssembledGroup {
    pub model: usize,
    pub reference: usize,
    pub branch: Branch,
    pub order: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct HandGroup {
    pub variant: Variant,
    pub order: usize,
}

/// Group orders of a row by both routes: from the monodromy of every model
/// and reference dart, and from the hand-derived relations of each variant.
#[derive(Debug, Clone, Serialize)]
pub struct RowGroups {
    pub row: usize,
    pub set: String,
    pub expected_order: usize,
    pub assembled: Vec<AssembledGroup>,
    pub hand: Vec<HandGroup>,
}

impl RowGroups {
    pub fn consistent(&self) -> bool {
        self.assembled.iter().all(|g| g.order == self.expected_order) && self.hand.iter().all(|g| g.order == self.expected_order)
    }
}

pub fn row_groups(row: usize, opts: EnumOptions) -> Result<RowGroups, PipelineError> {
    let spec = row_spec(row)?;
    let mut assembled = Vec::new();
    for (i, m) in row_models(row)?.iter().enumerate() {
        for h0 in reference_candidates(m) {
            let asm = assemble_with(m, h0, None);
            let order = asm.presentation.order(opts)?;
            assembled.push(AssembledGroup { model: i, reference: h0, branch: asm.monodromy.branch, order });
        }
    }
    let variants: &[Variant] = if spec.starred { &[Variant::Primary, Variant::Alternate] } else { &[Variant::Primary] };
    let mut hand = Vec::new();
    for &variant in variants {
        hand.push(HandGroup { variant, order: paper_relations(row, variant)?.order(opts)? });
    }
    Ok(RowGroups { row, set: spec.set.to_string(), expected_order: spec.order, assembled, hand })
}
