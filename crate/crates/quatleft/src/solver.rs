//! Multistart Newton for left eigenvalues, pencil certification and
//! manifold sampling.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::charpoly::{build_char_system, CharSystem, CompiledSystem};
use crate::dense::{norm, svd, Mat};
use crate::error::{Error, Result};
use crate::mpoly::MultiPoly4;
use crate::quaternion::{vec_norm, QuatF, QuatMatF, QuaternionMatrix};
use crate::representation::p1_f64;
use crate::spectra::{annulus, domination_check, right_eigenvalues_f64, AnnulusBound, RightSpectrum};

const RANK_REL: f64 = 1e-6;
const LOOSE_NEWTON: f64 = 1e-6;
const POLISH_ITERS: usize = 60;
const NULLITY_REL: f64 = 1e-8;
const CONE_DIRECTIONS: usize = 256;

#[derive(Clone, Debug, PartialEq)]
pub struct SolveConfig {
    pub tol_residual: f64,
    pub tol_newton: f64,
    pub tol_cluster: f64,
    pub n_starts: usize,
    pub max_iter: usize,
    pub rng_seed: u64,
    pub search_radius_scale: f64,
    /// Points requested from `sample_manifold` when a manifold is detected.
    pub manifold_samples: usize,
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig {
            tol_residual: 1e-10,
            tol_newton: 1e-12,
            tol_cluster: 1e-7,
            n_starts: 2000,
            max_iter: 100,
            rng_seed: 0,
            search_radius_scale: 1.25,
            manifold_samples: 50,
        }
    }
}

impl SolveConfig {
    pub fn validate(&self) -> Result<()> {
        let tols = [self.tol_residual, self.tol_newton, self.tol_cluster, self.search_radius_scale];
        if tols.iter().any(|t| !(t.is_finite() && *t > 0.0)) {
            return Err(Error::Precondition("tolerances and radius scale must be positive".into()));
        }
        if self.n_starts == 0 {
            return Err(Error::Precondition("n_starts must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct EigenCertificate {
    pub lambda: QuatF,
    /// ∞-norm of the characteristic system at lambda; None outside the Newton path.
    pub newton_residual: Option<f64>,
    pub pencil_sigma_min: f64,
    pub eigenvector: Vec<QuatF>,
    pub vector_residual: f64,
    /// Rank of the linearized singularity condition δ ↦ Σ wᵢ δ vᵢ.
    pub jacobian_rank: usize,
    /// Rank of the Jacobian of the polynomial system, when evaluated.
    pub system_jacobian_rank: Option<usize>,
    pub scale: f64,
    pub tol: f64,
    pub accepted: bool,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Coverage {
    pub starts: usize,
    pub seeded: usize,
    pub converged: usize,
    pub certified: usize,
    /// Certified starts per isolated eigenvalue, same order as `isolated`.
    pub basins: Vec<usize>,
    pub manifold_candidates: usize,
}

impl Coverage {
    pub fn converged_fraction(&self) -> f64 {
        self.converged as f64 / self.starts.max(1) as f64
    }
}

/// Affine dimension and best-fit sphere of sampled manifold points.
#[derive(Clone, Debug, PartialEq)]
pub struct ManifoldFit {
    pub affine_dim: usize,
    pub center: QuatF,
    pub radius: f64,
    pub max_deviation: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolutionSet {
    pub isolated: Vec<EigenCertificate>,
    pub manifold_points: Vec<EigenCertificate>,
    pub manifold_flag: bool,
    /// Certified rank-deficient roots whose manifold sampling collapsed.
    pub degenerate: Vec<EigenCertificate>,
    pub annulus: AnnulusBound,
    pub coverage: Coverage,
}

impl SolutionSet {
    pub fn all_certified(&self) -> impl Iterator<Item = &EigenCertificate> {
        self.isolated.iter().chain(&self.manifold_points).chain(&self.degenerate)
    }
}

fn fold(y: &[f64]) -> Vec<QuatF> {
    y.chunks(4).map(|c| QuatF([c[0], c[1], c[2], c[3]])).collect()
}

fn basis(k: usize) -> QuatF {
    let mut q = [0.0; 4];
    q[k] = 1.0;
    QuatF(q)
}

/// Real 4×4 matrix of δ ↦ Σ wᵢ δ vᵢ.
fn linearization(w: &[QuatF], v: &[QuatF]) -> Mat {
    let mut l = Mat::zeros(4, 4);
    for k in 0..4 {
        let e = basis(k);
        let col = w.iter().zip(v).fold(QuatF::ZERO, |acc, (&wi, &vi)| acc + wi * e * vi);
        for r in 0..4 {
            l[(r, k)] = col.0[r];
        }
    }
    l
}

fn rank_of(m: &Mat) -> Result<usize> {
    let s = svd(m)?;
    Ok(s.rank(RANK_REL * s.sigma_max().max(1.0)))
}

struct PencilState {
    sigma_min: f64,
    v: Vec<QuatF>,
    /// Left null directions, already conjugated: w X ≈ 0.
    w_all: Vec<Vec<QuatF>>,
    v_all: Vec<Vec<QuatF>>,
    residual: QuatF,
    l: Mat,
}

fn analyze(a: &QuatMatF, lambda: QuatF, scale: f64) -> Result<PencilState> {
    let x = a.shift(lambda);
    let m = p1_f64(&x);
    let right = svd(&m)?;
    let left = svd(&m.transpose())?;
    let n = m.cols;
    let sigma_min = right.sigma_min();
    // quaternionic nullity from groups of four small singular values
    let thr = (NULLITY_REL * scale).max(4.0 * sigma_min);
    let p = (right.sigma.iter().filter(|&&s| s <= thr).count() / 4).max(1);
    let v_all: Vec<Vec<QuatF>> = (0..p).map(|g| fold(&right.v.col(n - 1 - 4 * g))).collect();
    let w_all: Vec<Vec<QuatF>> =
        (0..p).map(|g| fold(&left.v.col(n - 1 - 4 * g)).into_iter().map(QuatF::conj).collect()).collect();
    let v = v_all[0].clone();
    let xv = x.mul_vec(&v);
    let residual = w_all[0].iter().zip(&xv).fold(QuatF::ZERO, |acc, (&wi, &xi)| acc + wi * xi);
    let l = linearization(&w_all[0], &v);
    Ok(PencilState { sigma_min, v, w_all, v_all, residual, l })
}

/// Rank of the singularity condition at a root. With quaternionic nullity
/// p ≥ 2 the condition is singularity of the p×p matrix [w_a δ v_b]; its
/// tangent cone is probed on sampled directions.
fn singularity_rank(st: &PencilState) -> Result<usize> {
    let p = st.v_all.len();
    if p == 1 {
        return rank_of(&st.l);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x00c0_ffee);
    let block = |d: QuatF| -> Result<f64> {
        let data = (0..p * p)
            .map(|ab| {
                let (a, b) = (ab / p, ab % p);
                st.w_all[a].iter().zip(&st.v_all[b]).fold(QuatF::ZERO, |acc, (&w, &v)| acc + w * d * v)
            })
            .collect();
        Ok(svd(&p1_f64(&QuatMatF { rows: p, cols: p, data }))?.sigma_min())
    };
    let mut best = f64::INFINITY;
    let mut largest: f64 = 0.0;
    let mut best_dir = QuatF::ONE;
    for _ in 0..CONE_DIRECTIONS {
        let d = unit_ball_point(&mut rng);
        let d = d.scale(1.0 / d.norm().max(f64::MIN_POSITIVE));
        let s = block(d)?;
        largest = largest.max(s);
        if s < best {
            best = s;
            best_dir = d;
        }
    }
    let mut step = 0.25;
    for _ in 0..200 {
        let trial = best_dir + unit_ball_point(&mut rng).scale(step);
        let trial = trial.scale(1.0 / trial.norm().max(f64::MIN_POSITIVE));
        let s = block(trial)?;
        if s < best {
            best = s;
            best_dir = trial;
        } else {
            step *= 0.97;
        }
    }
    if best > RANK_REL * largest.max(1.0) {
        Ok(4)
    } else {
        Ok(rank_of(&st.l)?.min(3))
    }
}

fn certificate(a: &QuatMatF, lambda: QuatF, tol: f64, scale: f64) -> Result<EigenCertificate> {
    let st = analyze(a, lambda, scale)?;
    let v = st.v.clone();
    let av = a.mul_vec(&v);
    let r: Vec<QuatF> = av.iter().zip(&v).map(|(&x, &y)| x - lambda * y).collect();
    let vector_residual = vec_norm(&r) / vec_norm(&v).max(f64::MIN_POSITIVE);
    let jacobian_rank = singularity_rank(&st)?;
    let accepted = st.sigma_min < tol * scale && vector_residual < tol * scale;
    Ok(EigenCertificate {
        lambda,
        newton_residual: None,
        pencil_sigma_min: st.sigma_min,
        eigenvector: v,
        vector_residual,
        jacobian_rank,
        system_jacobian_rank: None,
        scale,
        tol,
        accepted,
    })
}

/// max(1, σ_max(P₁(A))).
pub fn matrix_scale(a: &QuatMatF) -> Result<f64> {
    Ok(svd(&p1_f64(a))?.sigma_max().max(1.0))
}

pub fn verify_left_eigenvalue(a: &QuaternionMatrix, lambda: QuatF, tol: f64) -> Result<EigenCertificate> {
    verify_left_eigenvalue_f64(&a.to_f64(), lambda, tol)
}

pub fn verify_left_eigenvalue_f64(a: &QuatMatF, lambda: QuatF, tol: f64) -> Result<EigenCertificate> {
    if a.rows != a.cols {
        return Err(Error::NotSquare(a.rows, a.cols));
    }
    certificate(a, lambda, tol, matrix_scale(a)?)
}

/// Newton on the pencil: δ = L⁺ r with r = w (A − λI) v. The minimum-norm
/// step stays orthogonal to the null space of L.
fn polish(a: &QuatMatF, mut lambda: QuatF, scale: f64) -> Result<QuatF> {
    for _ in 0..POLISH_ITERS {
        let st = analyze(a, lambda, scale)?;
        let s = svd(&st.l)?;
        let step = s.solve(&st.residual.0, 1e-9 * s.sigma_max().max(f64::MIN_POSITIVE));
        let delta = QuatF([step[0], step[1], step[2], step[3]]);
        let next = lambda + delta;
        if !next.0.iter().all(|x| x.is_finite()) {
            break;
        }
        lambda = next;
        if delta.norm() <= 1e-15 * (1.0 + lambda.norm()) {
            break;
        }
    }
    Ok(lambda)
}

fn unit_ball_point(rng: &mut ChaCha8Rng) -> QuatF {
    loop {
        let q = QuatF(std::array::from_fn(|_| rng.gen_range(-1.0..1.0)));
        if q.norm2() <= 1.0 {
            return q;
        }
    }
}

fn abs_poly(p: &MultiPoly4) -> MultiPoly4 {
    p.terms().fold(MultiPoly4::zero(), |acc, (m, c)| acc.add(&MultiPoly4::term(num::Signed::abs(c), *m)))
}

struct Newton<'a> {
    sys: &'a CompiledSystem,
    magnitude: &'a CompiledSystem,
    cfg: &'a SolveConfig,
    bound: f64,
}

struct NewtonOutcome {
    x: [f64; 4],
    converged: bool,
}

fn inf_norm(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

impl Newton<'_> {
    fn relative(&self, x: &[f64; 4], f: &[f64]) -> f64 {
        let ax = x.map(f64::abs);
        let mag = inf_norm(&self.magnitude.eval(&ax)).max(1.0);
        inf_norm(f) / mag
    }

    fn run(&self, mut x: [f64; 4]) -> Result<NewtonOutcome> {
        let mut f = self.sys.eval(&x);
        let mut f2: f64 = f.iter().map(|y| y * y).sum();
        for _ in 0..self.cfg.max_iter {
            if self.relative(&x, &f) <= self.cfg.tol_newton || f2 == 0.0 {
                break;
            }
            let j = self.sys.jacobian(&x);
            let s = svd(&j)?;
            let step = s.solve(&f, 1e-12 * s.sigma_max().max(f64::MIN_POSITIVE));
            if norm(&step) <= 1e-16 * (1.0 + norm(&x)) {
                break;
            }
            let mut t = 1.0;
            let mut moved = false;
            for _ in 0..40 {
                let trial: [f64; 4] = std::array::from_fn(|i| x[i] - t * step[i]);
                let ft = self.sys.eval(&trial);
                let ft2: f64 = ft.iter().map(|y| y * y).sum();
                if ft2.is_finite() && ft2 <= (1.0 - 1e-4 * t) * f2 {
                    x = trial;
                    f = ft;
                    f2 = ft2;
                    moved = true;
                    break;
                }
                t *= 0.5;
            }
            if !moved || norm(&x) > self.bound {
                break;
            }
        }
        let converged = norm(&x) <= self.bound && self.relative(&x, &f) <= LOOSE_NEWTON;
        Ok(NewtonOutcome { x, converged })
    }
}

fn lex_cmp(a: &QuatF, b: &QuatF) -> std::cmp::Ordering {
    (0..4).map(|i| a.0[i].total_cmp(&b.0[i])).find(|o| o.is_ne()).unwrap_or(std::cmp::Ordering::Equal)
}

fn close(a: &QuatF, b: &QuatF, tol: f64) -> bool {
    (0..4).all(|i| (a.0[i] - b.0[i]).abs() < tol)
}

/// Greedy clustering over a sorted list; returns (representative, size).
fn cluster(mut certs: Vec<EigenCertificate>, tol: f64) -> Vec<(EigenCertificate, usize)> {
    certs.sort_by(|a, b| lex_cmp(&a.lambda, &b.lambda));
    let mut groups: Vec<(EigenCertificate, usize)> = Vec::new();
    for c in certs {
        match groups.iter_mut().find(|(g, _)| close(&g.lambda, &c.lambda, tol)) {
            Some((g, n)) => {
                *n += 1;
                if c.pencil_sigma_min < g.pencil_sigma_min {
                    *g = c;
                }
            }
            None => groups.push((c, 1)),
        }
    }
    groups
}

fn with_system_info(mut c: EigenCertificate, sys: &CompiledSystem) -> Result<EigenCertificate> {
    let x = c.lambda.0;
    c.newton_residual = Some(inf_norm(&sys.eval(&x)));
    c.system_jacobian_rank = Some(rank_of(&sys.jacobian(&x))?);
    Ok(c)
}

pub fn solve_left_eigenvalues(a: &QuaternionMatrix, cfg: &SolveConfig) -> Result<SolutionSet> {
    let system = build_char_system(a)?;
    solve_with_system(a, &system, cfg)
}

pub fn solve_with_system(a: &QuaternionMatrix, system: &CharSystem, cfg: &SolveConfig) -> Result<SolutionSet> {
    cfg.validate()?;
    if !a.is_square() {
        return Err(Error::NotSquare(a.rows(), a.cols()));
    }
    let af = a.to_f64();
    let bound = annulus(a)?;
    let scale = matrix_scale(&af)?;
    if let Some(q) = &system.trivial {
        let c = certificate(&af, q.to_f64(), cfg.tol_residual, scale)?;
        let accepted = c.accepted;
        let coverage = Coverage { starts: 1, seeded: 1, converged: 1, certified: usize::from(accepted), basins: vec![1], manifold_candidates: 0 };
        if !accepted {
            return Err(Error::NoConvergence);
        }
        return Ok(SolutionSet {
            isolated: vec![c],
            manifold_points: Vec::new(),
            manifold_flag: false,
            degenerate: Vec::new(),
            annulus: bound,
            coverage,
        });
    }
    let sys = system.compiled();
    let magnitude = CompiledSystem::new(&system.equations.iter().map(abs_poly).collect::<Vec<_>>());
    let radius = cfg.search_radius_scale * bound.sigma_max;
    let mut starts: Vec<[f64; 4]> = (0..af.rows).map(|i| af.get(i, i).0).collect();
    let seeded = starts.len();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed);
    while starts.len() < seeded + cfg.n_starts {
        starts.push(unit_ball_point(&mut rng).scale(radius).0);
    }
    let newton = Newton { sys: &sys, magnitude: &magnitude, cfg, bound: 10.0 * (radius + 1.0) };
    // Newton on F stalls near roots of high-multiplicity common factors, so
    // every bounded endpoint is polished on the pencil before certification.
    let outcomes: Vec<Result<Option<(bool, EigenCertificate)>>> = starts
        .par_iter()
        .map(|&x0| {
            let out = newton.run(x0)?;
            if !out.x.iter().all(|v| v.is_finite()) || norm(&out.x) > newton.bound {
                return Ok(None);
            }
            let lambda = polish(&af, QuatF(out.x), scale)?;
            Ok(Some((out.converged, certificate(&af, lambda, cfg.tol_residual, scale)?)))
        })
        .collect();
    let mut converged = 0;
    let mut certified = Vec::new();
    for o in outcomes {
        if let Some((newton_ok, c)) = o? {
            if newton_ok || c.accepted {
                converged += 1;
            }
            if c.accepted {
                certified.push(c);
            }
        }
    }
    let n_certified = certified.len();
    let groups = cluster(certified, cfg.tol_cluster);
    let mut isolated = Vec::new();
    let mut basins = Vec::new();
    let mut candidates = Vec::new();
    for (c, n) in groups {
        let c = with_system_info(c, &sys)?;
        if c.jacobian_rank == 4 {
            isolated.push(c);
            basins.push(n);
        } else {
            candidates.push(c);
        }
    }
    let mut manifold_points = Vec::new();
    let mut degenerate = Vec::new();
    let manifold_candidates = candidates.len();
    if let Some(seed) = candidates.first() {
        match sample_manifold_f64(&af, seed, cfg.manifold_samples, cfg) {
            Ok(points) => {
                manifold_points.push(seed.clone());
                for p in points {
                    manifold_points.push(with_system_info(p, &sys)?);
                }
            }
            Err(Error::ManifoldCollapse { .. }) => degenerate = candidates,
            Err(e) => return Err(e),
        }
    }
    if isolated.is_empty() && manifold_points.is_empty() && degenerate.is_empty() {
        return Err(Error::NoConvergence);
    }
    Ok(SolutionSet {
        isolated,
        manifold_flag: !manifold_points.is_empty(),
        manifold_points,
        degenerate,
        annulus: bound,
        coverage: Coverage { starts: starts.len(), seeded, converged, certified: n_certified, basins, manifold_candidates },
    })
}

pub fn sample_manifold(a: &QuaternionMatrix, seed: &EigenCertificate, k: usize, cfg: &SolveConfig) -> Result<Vec<EigenCertificate>> {
    sample_manifold_f64(&a.to_f64(), seed, k, cfg)
}

/// Perturbs along the null space of the linearization and re-polishes.
/// Returns k new certified points with rank < 4, pairwise distinct and
/// distinct from the seed.
pub fn sample_manifold_f64(a: &QuatMatF, seed: &EigenCertificate, k: usize, cfg: &SolveConfig) -> Result<Vec<EigenCertificate>> {
    if seed.jacobian_rank >= 4 {
        return Err(Error::Precondition("manifold sampling needs a rank-deficient seed".into()));
    }
    let scale = matrix_scale(a)?;
    let reach = 0.2 * svd(&p1_f64(a))?.sigma_max().max(1e-3);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed ^ 0x6d61_6e69);
    let mut pool = vec![seed.lambda];
    let mut out: Vec<EigenCertificate> = Vec::new();
    let max_attempts = 20 * k.max(1);
    for _ in 0..max_attempts {
        if out.len() >= k {
            break;
        }
        let base = pool[rng.gen_range(0..pool.len())];
        let st = analyze(a, base, scale)?;
        let s = svd(&st.l)?;
        let tangent = s.null_space(RANK_REL * s.sigma_max().max(1.0));
        if tangent.is_empty() {
            continue;
        }
        let mut dir = [0.0; 4];
        for t in &tangent {
            let c: f64 = rng.gen_range(-1.0..1.0);
            for i in 0..4 {
                dir[i] += c * t[i];
            }
        }
        let n = norm(&dir);
        if n == 0.0 {
            continue;
        }
        let h = reach * rng.gen_range(0.1..1.0) / n;
        let trial = base + QuatF(dir.map(|d| d * h));
        let lambda = polish(a, trial, scale)?;
        let c = certificate(a, lambda, cfg.tol_residual, scale)?;
        if !c.accepted || c.jacobian_rank >= 4 {
            continue;
        }
        if close(&c.lambda, &seed.lambda, cfg.tol_cluster) || out.iter().any(|o| close(&o.lambda, &c.lambda, cfg.tol_cluster)) {
            continue;
        }
        pool.push(c.lambda);
        out.push(c);
    }
    if out.len() * 2 < k {
        return Err(Error::ManifoldCollapse { certified: out.len(), requested: k });
    }
    Ok(out)
}

/// Affine span dimension and least-squares sphere inside that span.
pub fn fit_manifold(points: &[QuatF]) -> Result<Option<ManifoldFit>> {
    if points.len() < 3 {
        return Ok(None);
    }
    let n = points.len() as f64;
    let mean = points.iter().fold(QuatF::ZERO, |acc, &p| acc + p).scale(1.0 / n);
    let centered = Mat::from_rows(&points.iter().map(|&p| (p - mean).0.to_vec()).collect::<Vec<_>>());
    let s = svd(&centered)?;
    let thr = 1e-6 * s.sigma_max().max(f64::MIN_POSITIVE);
    let dirs: Vec<Vec<f64>> = (0..4).filter(|&j| s.sigma[j] > thr).map(|j| s.v.col(j)).collect();
    let d = dirs.len();
    if d == 0 {
        return Ok(None);
    }
    let coords: Vec<Vec<f64>> = points
        .iter()
        .map(|&p| dirs.iter().map(|b| (0..4).map(|i| b[i] * (p - mean).0[i]).sum()).collect())
        .collect();
    // |y|² = 2 c·y + e
    let rows: Vec<Vec<f64>> = coords.iter().map(|y| y.iter().map(|v| 2.0 * v).chain([1.0]).collect()).collect();
    let rhs: Vec<f64> = coords.iter().map(|y| y.iter().map(|v| v * v).sum()).collect();
    let ls = svd(&Mat::from_rows(&rows))?;
    let sol = ls.solve(&rhs, 1e-12 * ls.sigma_max());
    let c = &sol[..d];
    let r2 = sol[d] + c.iter().map(|x| x * x).sum::<f64>();
    if r2 <= 0.0 {
        return Ok(None);
    }
    let mut center = mean;
    for (b, &cj) in dirs.iter().zip(c) {
        for i in 0..4 {
            center.0[i] += cj * b[i];
        }
    }
    let radius = r2.sqrt();
    let max_deviation = points.iter().fold(0.0f64, |m, &p| m.max(((p - center).norm() - radius).abs()));
    Ok(Some(ManifoldFit { affine_dim: d, center, radius, max_deviation }))
}

#[derive(Clone, Debug)]
pub struct SpectrumReport {
    pub equations: Vec<String>,
    pub solution: SolutionSet,
    pub right: RightSpectrum,
    pub domination: bool,
    pub annulus_contains_all: bool,
    pub manifold_fit: Option<ManifoldFit>,
}

pub fn left_spectrum_report(a: &QuaternionMatrix, cfg: &SolveConfig) -> Result<SpectrumReport> {
    let system = build_char_system(a)?;
    let solution = solve_with_system(a, &system, cfg)?;
    let right = right_eigenvalues_f64(&a.to_f64())?;
    let norms: Vec<f64> = solution.all_certified().map(|c| c.lambda.norm()).collect();
    let domination = domination_check(&right, norms.iter().copied());
    let annulus_contains_all = norms.iter().all(|&n| solution.annulus.contains(n, 1e-8));
    let manifold_fit = if solution.manifold_flag {
        fit_manifold(&solution.manifold_points.iter().map(|c| c.lambda).collect::<Vec<_>>())?
    } else {
        None
    };
    let equations = match &system.trivial {
        Some(q) => vec![format!("lambda = {q}")],
        None => system.equations.iter().map(|p| p.to_string()).collect(),
    };
    Ok(SpectrumReport { equations, solution, right, domination, annulus_contains_all, manifold_fit })
}
