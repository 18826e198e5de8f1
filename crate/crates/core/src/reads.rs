//! The read operator, identifiability classes and the exact oracle.

use std::collections::BTreeSet;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::group::{GroupCtx, Shape};
use crate::pattern::{Pattern, Symbol};

/// Default node budget for the backtracking oracle.
pub const DEFAULT_ORACLE_BUDGET: u64 = 1 << 24;

/// A center set `C` and read shape `K` in a group, with the index tables
/// every downstream computation needs.
///
/// Patterns on `CK` are handled as symbol vectors aligned to the canonical
/// order of `CK`; `read_cells[i][j]` is the position of `c_i k_j` in that order.
#[derive(Clone, Debug)]
pub struct Instance {
    ctx: GroupCtx,
    centers: Shape,
    read_shape: Shape,
    alphabet: usize,
    ck: Shape,
    stabilizer: Shape,
    read_cells: Vec<Vec<usize>>,
    stabilizer_maps: Vec<Vec<usize>>,
}

impl Instance {
    pub fn new(ctx: GroupCtx, centers: Shape, read_shape: Shape, alphabet: usize) -> Result<Self> {
        if centers.is_empty() || read_shape.is_empty() {
            return Err(Error::InvalidArgument("center set and read shape must be nonempty".into()));
        }
        if alphabet < 2 {
            return Err(Error::InvalidArgument("alphabet needs at least two symbols".into()));
        }
        let ck = ctx.set_product(&centers, &read_shape)?;
        let mut read_cells = Vec::with_capacity(centers.len());
        for c in centers.iter() {
            let row = read_shape
                .iter()
                .map(|k| Ok(ck.index_of(&ctx.mul(c, k)?).expect("ck contains every c*k")))
                .collect::<Result<Vec<_>>>()?;
            read_cells.push(row);
        }
        let stabilizer = ctx.stabilizer(&centers)?;
        let mut stabilizer_maps = Vec::with_capacity(stabilizer.len());
        for g in stabilizer.iter() {
            // gC = C implies gCK = CK
            let map = ck
                .iter()
                .map(|h| Ok(ck.index_of(&ctx.mul(g, h)?).expect("stabilizer preserves CK")))
                .collect::<Result<Vec<_>>>()?;
            stabilizer_maps.push(map);
        }
        Ok(Self { ctx, centers, read_shape, alphabet, ck, stabilizer, read_cells, stabilizer_maps })
    }

    pub fn ctx(&self) -> &GroupCtx {
        &self.ctx
    }

    pub fn centers(&self) -> &Shape {
        &self.centers
    }

    pub fn read_shape(&self) -> &Shape {
        &self.read_shape
    }

    pub fn alphabet(&self) -> usize {
        self.alphabet
    }

    /// `CK`.
    pub fn ck(&self) -> &Shape {
        &self.ck
    }

    /// `G_C`, the C-preserving translations.
    pub fn stabilizer(&self) -> &Shape {
        &self.stabilizer
    }

    /// Positions in `CK` of the cells read from center `i`, in `K` order.
    pub fn read_cells(&self, i: usize) -> &[usize] {
        &self.read_cells[i]
    }

    /// Checks that `w` lives on `CK` over this alphabet and returns its symbols.
    pub fn check_pattern<'a>(&self, w: &'a Pattern) -> Result<&'a [Symbol]> {
        if w.shape() != &self.ck {
            return Err(Error::ShapeMismatch("pattern must live on CK".into()));
        }
        w.check_alphabet(self.alphabet)?;
        Ok(w.symbols())
    }

    pub fn pattern(&self, symbols: Vec<Symbol>) -> Result<Pattern> {
        let w = Pattern::new(self.ck.clone(), symbols)?;
        w.check_alphabet(self.alphabet)?;
        Ok(w)
    }

    /// `sigma^g(w)` for the `s`-th element `g` of `G_C`.
    fn act(&self, s: usize, w: &[Symbol]) -> Vec<Symbol> {
        self.stabilizer_maps[s].iter().map(|&j| w[j]).collect()
    }

    fn read_symbols(&self, w: &[Symbol]) -> Vec<Vec<Symbol>> {
        let mut reads: Vec<Vec<Symbol>> =
            self.read_cells.iter().map(|row| row.iter().map(|&j| w[j]).collect()).collect();
        reads.sort_unstable();
        reads
    }

    fn class_symbols(&self, w: &[Symbol]) -> BTreeSet<Vec<Symbol>> {
        (0..self.stabilizer.len()).map(|s| self.act(s, w)).collect()
    }
}

/// The multiset of reads, each represented on `K` itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReadMultiset {
    read_shape: Shape,
    reads: Vec<Vec<Symbol>>,
    fingerprint: u128,
}

impl ReadMultiset {
    fn from_sorted(read_shape: Shape, reads: Vec<Vec<Symbol>>) -> Self {
        let mut h = Sha256::new();
        for r in &reads {
            h.update((r.len() as u64).to_le_bytes());
            h.update(r);
        }
        let digest = h.finalize();
        let fingerprint = u128::from_le_bytes(digest[..16].try_into().expect("16 bytes"));
        Self { read_shape, reads, fingerprint }
    }

    pub fn len(&self) -> usize {
        self.reads.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reads.is_empty()
    }

    /// Order-insensitive 128-bit digest of the multiset.
    pub fn fingerprint(&self) -> u128 {
        self.fingerprint
    }

    /// Reads as symbol vectors in sorted order.
    pub fn read_symbols(&self) -> &[Vec<Symbol>] {
        &self.reads
    }

    pub fn patterns(&self) -> impl Iterator<Item = Pattern> + '_ {
        self.reads.iter().map(|r| Pattern::new(self.read_shape.clone(), r.clone()).expect("read matches K"))
    }

    /// Distinct reads with multiplicities.
    pub fn counts(&self) -> Vec<(Vec<Symbol>, usize)> {
        let mut out: Vec<(Vec<Symbol>, usize)> = Vec::new();
        for r in &self.reads {
            match out.last_mut() {
                Some((last, n)) if last == r => *n += 1,
                _ => out.push((r.clone(), 1)),
            }
        }
        out
    }
}

/// `R_{C,K}(w)`.
pub fn reads(inst: &Instance, w: &Pattern) -> Result<ReadMultiset> {
    let sym = inst.check_pattern(w)?;
    Ok(ReadMultiset::from_sorted(inst.read_shape.clone(), inst.read_symbols(sym)))
}

/// Exact multiset comparison; the digest only short-circuits the negative case.
pub fn multiset_equal(a: &ReadMultiset, b: &ReadMultiset) -> bool {
    a.read_shape == b.read_shape && a.fingerprint == b.fingerprint && a.reads == b.reads
}

/// All `v` with `sigma^g(v) = w` for some `g` in `G_C`, in canonical order.
pub fn identifiability_class(inst: &Instance, w: &Pattern) -> Result<Vec<Pattern>> {
    let sym = inst.check_pattern(w)?;
    Ok(inst
        .class_symbols(sym)
        .into_iter()
        .map(|s| Pattern::new(inst.ck.clone(), s).expect("aligned"))
        .collect())
}

/// Whether `v` lies in the identifiability class of `w`.
pub fn in_class(inst: &Instance, w: &[Symbol], v: &[Symbol]) -> bool {
    (0..inst.stabilizer.len()).any(|s| inst.stabilizer_maps[s].iter().zip(v).all(|(&j, &x)| w[j] == x))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleVerdict {
    Identifiable,
    /// `witness` has the same reads as the input but lies outside its class.
    NonIdentifiable { witness: Pattern },
}

impl OracleVerdict {
    pub fn is_identifiable(&self) -> bool {
        matches!(self, OracleVerdict::Identifiable)
    }
}

/// Exact identifiability test by enumerating the preimage of the reads.
pub fn oracle_identifiable(inst: &Instance, w: &Pattern, budget: u64) -> Result<OracleVerdict> {
    let sym = inst.check_pattern(w)?;
    let class = inst.class_symbols(sym);
    let pre = preimage_symbols(inst, sym, budget)?;
    // `pre` is sorted, so the first outsider is the canonical witness.
    Ok(match pre.into_iter().find(|v| !class.contains(v)) {
        Some(v) => OracleVerdict::NonIdentifiable { witness: inst.pattern(v)? },
        None => OracleVerdict::Identifiable,
    })
}

/// Every pattern on `CK` whose reads equal those of `w`, in canonical order.
pub fn preimage(inst: &Instance, w: &Pattern, budget: u64) -> Result<Vec<Pattern>> {
    let sym = inst.check_pattern(w)?;
    preimage_symbols(inst, sym, budget)?.into_iter().map(|v| inst.pattern(v)).collect()
}

const UNSET: Symbol = Symbol::MAX;

/// Backtracking over centers in canonical order: center `i` receives one of
/// the still-available distinct reads and writes its symbols into `CK`,
/// pruning on the first clash with an earlier assignment. Equal reads are
/// pooled with a multiplicity count, so each preimage is produced once.
fn preimage_symbols(inst: &Instance, w: &[Symbol], budget: u64) -> Result<Vec<Vec<Symbol>>> {
    let ms = ReadMultiset::from_sorted(inst.read_shape.clone(), inst.read_symbols(w));
    let mut types = ms.counts();
    let mut cells = vec![UNSET; inst.ck.len()];
    let mut out = Vec::new();
    let mut nodes = 0u64;

    struct Search<'a> {
        inst: &'a Instance,
        budget: u64,
    }

    fn go(
        s: &Search,
        i: usize,
        types: &mut [(Vec<Symbol>, usize)],
        cells: &mut [Symbol],
        nodes: &mut u64,
        out: &mut Vec<Vec<Symbol>>,
    ) -> Result<()> {
        if i == s.inst.read_cells.len() {
            // every cell of CK is covered by some read
            out.push(cells.to_vec());
            return Ok(());
        }
        let row = &s.inst.read_cells[i];
        for t in 0..types.len() {
            if types[t].1 == 0 {
                continue;
            }
            *nodes += 1;
            if *nodes > s.budget {
                return Err(Error::BudgetExceeded { limit: s.budget });
            }
            let mut written = Vec::new();
            let mut ok = true;
            for (j, &cell) in row.iter().enumerate() {
                let want = types[t].0[j];
                if cells[cell] == UNSET {
                    cells[cell] = want;
                    written.push(cell);
                } else if cells[cell] != want {
                    ok = false;
                    break;
                }
            }
            if ok {
                types[t].1 -= 1;
                go(s, i + 1, types, cells, nodes, out)?;
                types[t].1 += 1;
            }
            for cell in written {
                cells[cell] = UNSET;
            }
        }
        Ok(())
    }

    go(&Search { inst, budget }, 0, &mut types, &mut cells, &mut nodes, &mut out)?;
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// Preimage by scanning all of `A^{CK}`; errors if that exceeds `budget`.
pub fn naive_preimage(inst: &Instance, w: &Pattern, budget: u64) -> Result<Vec<Pattern>> {
    let sym = inst.check_pattern(w)?;
    let n = inst.ck.len();
    let q = inst.alphabet as u64;
    let total = (q as f64).powi(n as i32);
    if total > budget as f64 {
        return Err(Error::BudgetExceeded { limit: budget });
    }
    let target = inst.read_symbols(sym);
    let mut out = Vec::new();
    let mut v = vec![0 as Symbol; n];
    for code in 0..q.pow(n as u32) {
        let mut c = code;
        for x in v.iter_mut().rev() {
            *x = (c % q) as Symbol;
            c /= q;
        }
        if inst.read_symbols(&v) == target {
            out.push(inst.pattern(v.clone())?);
        }
    }
    Ok(out)
}
