//! End-to-end enumeration: every Lyndon word of length `n` over `F_p` maps to
//! one monic irreducible polynomial of degree `n`, and its rotations map to
//! the polynomial's roots in normal coordinates.
//!
//! Preprocessing finds a modulus and a normal basis (seeded, hence
//! deterministic); the per-record work is one change-of-basis product and,
//! unless roots-only output was requested, one minimal-polynomial
//! computation.

use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::field::{
    frobenius_normal, minimal_polynomial, ExtElement, ExtField, FieldError, NormalBasis, Poly,
    PrimeField,
};
use crate::lyndon::{count_lyndon, LyndonEnumerator};
use crate::words::{Alphabet, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Polynomials,
    PolynomialsAndRoots,
    RootsOnly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootBasis {
    /// Normal coordinates: the roots of the record are the rotations of the
    /// Lyndon word, at zero arithmetic cost.
    Normal,
    /// Polynomial-basis coordinates, one change-of-basis product per root.
    Poly,
}

#[derive(Debug, Clone)]
pub struct EnumConfig {
    pub p: u64,
    pub n: usize,
    pub mode: Mode,
    pub limit: Option<usize>,
    pub seed: u64,
    pub root_basis: RootBasis,
}

impl EnumConfig {
    pub fn new(p: u64, n: usize) -> Self {
        EnumConfig {
            p,
            n,
            mode: Mode::PolynomialsAndRoots,
            limit: None,
            seed: 0,
            root_basis: RootBasis::Normal,
        }
    }
}

/// One output record: the Lyndon word, and per mode the polynomial and its
/// roots (all `n` conjugates, or a single root in roots-only mode).
#[derive(Debug, Clone, PartialEq)]
pub struct EnumRecord {
    pub lyndon: Word,
    pub polynomial: Option<Poly>,
    pub roots: Option<Vec<Vec<u64>>>,
    pub root_basis: RootBasis,
}

impl EnumRecord {
    /// Line-oriented serialization:
    /// `lyndon=<word> poly=<coeffs> roots=<vec;vec;...> basis=<normal|poly>`
    /// with fields present per mode.
    pub fn to_line(&self) -> String {
        let mut line = format!("lyndon={}", self.lyndon);
        if let Some(poly) = &self.polynomial {
            line.push_str(&format!(" poly={}", poly.serialize()));
        }
        if let Some(roots) = &self.roots {
            let parts: Vec<String> = roots
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|c| c.to_string())
                        .collect::<Vec<_>>()
                        .join(",")
                })
                .collect();
            line.push_str(&format!(" roots={}", parts.join(";")));
            let basis = match self.root_basis {
                RootBasis::Normal => "normal",
                RootBasis::Poly => "poly",
            };
            line.push_str(&format!(" basis={basis}"));
        }
        line
    }
}

/// Immutable context produced by preprocessing: the extension field and a
/// normal basis for it.
#[derive(Debug, Clone)]
pub struct PipelineCtx {
    ext: ExtField,
    nb: NormalBasis,
}

impl PipelineCtx {
    /// Builds the context from explicit parts (a modulus already wrapped in
    /// an [`ExtField`] and a normal-basis generator), bypassing the random
    /// searches. Useful for pinning a known field presentation.
    pub fn from_parts(ext: ExtField, alpha: ExtElement) -> Result<Self, FieldError> {
        let nb = NormalBasis::try_new(&ext, alpha)?;
        Ok(PipelineCtx { ext, nb })
    }

    pub fn ext(&self) -> &ExtField {
        &self.ext
    }

    pub fn normal_basis(&self) -> &NormalBasis {
        &self.nb
    }
}

/// Preprocessing: find a monic irreducible modulus of degree `n`, then a
/// normal basis for the resulting extension. Deterministic for a fixed seed.
pub fn preprocess(cfg: &EnumConfig) -> Result<PipelineCtx, FieldError> {
    let base = PrimeField::new(cfg.p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let modulus = base.find_irreducible(cfg.n, &mut rng)?;
    let ext = ExtField::new(base, modulus)?;
    let nb = NormalBasis::find(&ext, &mut rng)?;
    Ok(PipelineCtx { ext, nb })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PipelineError {
    Field(FieldError),
    /// An internal consistency failure; carries the offending word.
    Inconsistent {
        lyndon: String,
        error: FieldError,
    },
}

impl fmt::Display for PipelineError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PipelineError::Field(e) => write!(f, "{e}"),
            PipelineError::Inconsistent { lyndon, error } => {
                write!(f, "inconsistency at lyndon={lyndon}: {error}")
            }
        }
    }
}

impl std::error::Error for PipelineError {}

impl From<FieldError> for PipelineError {
    fn from(e: FieldError) -> Self {
        PipelineError::Field(e)
    }
}

/// Streaming enumeration per the configured mode. Ends when the Lyndon
/// enumerator is exhausted or the limit is reached; an internal consistency
/// error aborts the stream after yielding the diagnostic.
pub struct Pipeline {
    ctx: PipelineCtx,
    cfg: EnumConfig,
    words: LyndonEnumerator,
    emitted: usize,
    failed: bool,
}

impl Pipeline {
    pub fn ctx(&self) -> &PipelineCtx {
        &self.ctx
    }

    pub fn config(&self) -> &EnumConfig {
        &self.cfg
    }

    fn record_for(&self, lambda: Word) -> Result<EnumRecord, PipelineError> {
        let ext = &self.ctx.ext;
        let nb = &self.ctx.nb;
        let n = self.cfg.n;
        let normal: Vec<u64> = lambda.symbols().iter().map(|&s| u64::from(s)).collect();

        let polynomial = match self.cfg.mode {
            Mode::RootsOnly => None,
            _ => {
                let gamma = nb.gamma_from_word(ext, &lambda).map_err(|error| {
                    PipelineError::Inconsistent {
                        lyndon: lambda.to_string(),
                        error,
                    }
                })?;
                Some(minimal_polynomial(ext, &gamma).map_err(|error| {
                    PipelineError::Inconsistent {
                        lyndon: lambda.to_string(),
                        error,
                    }
                })?)
            }
        };

        let roots = match self.cfg.mode {
            Mode::Polynomials => None,
            Mode::RootsOnly => {
                // one root, gamma itself; in normal coordinates this is the
                // word, so no extension arithmetic happens at all
                let root = match self.cfg.root_basis {
                    RootBasis::Normal => normal,
                    RootBasis::Poly => nb
                        .to_poly_coords(ext, &normal)
                        .map_err(PipelineError::Field)?
                        .coords()
                        .to_vec(),
                };
                Some(vec![root])
            }
            Mode::PolynomialsAndRoots => {
                // the conjugates gamma^(p^k) are the rotations of lambda
                let all: Vec<Vec<u64>> = (0..n).map(|k| frobenius_normal(&normal, k)).collect();
                let converted = match self.cfg.root_basis {
                    RootBasis::Normal => all,
                    RootBasis::Poly => all
                        .iter()
                        .map(|r| {
                            nb.to_poly_coords(ext, r)
                                .map(|e| e.coords().to_vec())
                                .map_err(PipelineError::Field)
                        })
                        .collect::<Result<_, _>>()?,
                };
                Some(converted)
            }
        };

        Ok(EnumRecord {
            lyndon: lambda,
            polynomial,
            roots,
            root_basis: self.cfg.root_basis,
        })
    }
}

impl Iterator for Pipeline {
    type Item = Result<EnumRecord, PipelineError>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.failed {
            return None;
        }
        if let Some(limit) = self.cfg.limit {
            if self.emitted >= limit {
                return None;
            }
        }
        let lambda = self.words.next()?;
        let record = self.record_for(lambda);
        if record.is_err() {
            self.failed = true;
        } else {
            self.emitted += 1;
        }
        Some(record)
    }
}

/// Builds the pipeline: preprocessing plus the Lyndon cursor positioned at
/// `0^(n-1) 1`.
pub fn run(cfg: EnumConfig) -> Result<Pipeline, FieldError> {
    let ctx = preprocess(&cfg)?;
    Ok(run_with_ctx(cfg, ctx))
}

/// Runs against an explicitly constructed context (e.g. a pinned field
/// presentation).
pub fn run_with_ctx(cfg: EnumConfig, ctx: PipelineCtx) -> Pipeline {
    let words = LyndonEnumerator::new(cfg.n, ctx.ext.base().p() as u32);
    Pipeline {
        ctx,
        cfg,
        words,
        emitted: 0,
        failed: false,
    }
}

/// Outcome of [`verify_stream`]: collected failures instead of panics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub records: usize,
    pub failures: Vec<String>,
    /// `None` when the stream was truncated and the count check was skipped.
    pub count_checked: Option<bool>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty() && self.count_checked != Some(false)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok() {
            write!(f, "OK count={}", self.records)
        } else {
            writeln!(f, "FAILED count={}", self.records)?;
            for failure in &self.failures {
                writeln!(f, "  {failure}")?;
            }
            Ok(())
        }
    }
}

/// Self-checks a finished (or, with `truncated`, partial) stream: polynomial
/// distinctness and irreducibility, root counts and distinctness, sampled
/// root evaluations, and the total count against the Moebius formula.
pub fn verify_stream(
    records: &[EnumRecord],
    ctx: &PipelineCtx,
    cfg: &EnumConfig,
    truncated: bool,
) -> VerifyReport {
    let mut failures = Vec::new();
    let ext = &ctx.ext;
    let nb = &ctx.nb;

    let mut seen = std::collections::HashSet::new();
    for record in records {
        if let Some(poly) = &record.polynomial {
            if !seen.insert(poly.clone()) {
                failures.push(format!(
                    "duplicate polynomial {} at lyndon={}",
                    poly.serialize(),
                    record.lyndon
                ));
            }
            if poly.degree() != cfg.n || !poly.is_monic() {
                failures.push(format!(
                    "polynomial {} is not monic of degree {}",
                    poly.serialize(),
                    cfg.n
                ));
            }
            match ext.base().is_irreducible(poly) {
                Ok(true) => {}
                Ok(false) => failures.push(format!("reducible polynomial {}", poly.serialize())),
                Err(e) => failures.push(format!("irreducibility check failed: {e}")),
            }
        }
        if let Some(roots) = &record.roots {
            let expected = match cfg.mode {
                Mode::RootsOnly => 1,
                _ => cfg.n,
            };
            if roots.len() != expected {
                failures.push(format!(
                    "expected {expected} roots, found {} at lyndon={}",
                    roots.len(),
                    record.lyndon
                ));
            }
            let distinct: std::collections::HashSet<_> = roots.iter().collect();
            if distinct.len() != roots.len() {
                failures.push(format!("repeated roots at lyndon={}", record.lyndon));
            }
        }
    }

    // evaluate g at every root for a sample of records
    let stride = (records.len() / 64).max(1);
    for record in records.iter().step_by(stride) {
        let (Some(poly), Some(roots)) = (&record.polynomial, &record.roots) else {
            continue;
        };
        for root in roots {
            let element = match record.root_basis {
                RootBasis::Poly => ext.from_coords(root.clone()),
                RootBasis::Normal => nb.to_poly_coords(ext, root),
            };
            match element {
                Ok(e) => {
                    if !ext.eval_base_poly(poly, &e).is_zero() {
                        failures.push(format!(
                            "g(root) != 0 at lyndon={} root={root:?}",
                            record.lyndon
                        ));
                    }
                }
                Err(e) => failures.push(format!("bad root coordinates: {e}")),
            }
        }
    }

    let count_checked = if truncated {
        None
    } else {
        let expected = count_lyndon(cfg.n, cfg.p as u32);
        let ok = num_bigint::BigUint::from(records.len()) == expected;
        if !ok {
            failures.push(format!(
                "emitted {} records, expected {expected}",
                records.len()
            ));
        }
        Some(ok)
    };

    VerifyReport {
        records: records.len(),
        failures,
        count_checked,
    }
}

/// The alphabet identified with `F_p`.
pub fn alphabet_for(p: u64) -> Alphabet {
    Alphabet::new(p as u32)
}
