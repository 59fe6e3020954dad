//! Machine values, their size measure, canonical order and enumeration by size.

use std::cmp::Ordering;
use std::collections::hash_map::DefaultHasher;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::ids::ProgramId;

/// A shared, immutable sequence of data with its size sum and hash cached.
#[derive(Clone)]
pub struct Items(Arc<ItemsInner>);

struct ItemsInner {
    items: Box<[Datum]>,
    size_sum: u64,
    hash: u64,
}

impl Items {
    pub fn new(items: Vec<Datum>) -> Self {
        let mut size_sum = 0u64;
        let mut h = DefaultHasher::new();
        items.len().hash(&mut h);
        for it in &items {
            size_sum = size_sum.saturating_add(it.size());
            it.hash(&mut h);
        }
        Items(Arc::new(ItemsInner {
            items: items.into_boxed_slice(),
            size_sum,
            hash: h.finish(),
        }))
    }

    pub fn as_slice(&self) -> &[Datum] {
        &self.0.items
    }

    fn size_sum(&self) -> u64 {
        self.0.size_sum
    }
}

impl PartialEq for Items {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.hash == other.0.hash
                && self.0.size_sum == other.0.size_sum
                && self.0.items == other.0.items)
    }
}

impl Eq for Items {}

impl Hash for Items {
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_u64(self.0.hash);
    }
}

impl std::ops::Deref for Items {
    type Target = [Datum];

    fn deref(&self) -> &[Datum] {
        self.as_slice()
    }
}

/// A machine value: a natural number, a list, or an algorithm with captured data.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Datum {
    Nat(u64),
    List(Items),
    Alg(ProgramId, Items),
}

impl Datum {
    pub fn nat(n: u64) -> Self {
        Datum::Nat(n)
    }

    pub fn list(items: Vec<Datum>) -> Self {
        Datum::List(Items::new(items))
    }

    pub fn alg(prog: ProgramId, captures: Vec<Datum>) -> Self {
        Datum::Alg(prog, Items::new(captures))
    }

    /// An algorithm with no captures.
    pub fn prog(prog: ProgramId) -> Self {
        Datum::alg(prog, Vec::new())
    }

    pub fn size(&self) -> u64 {
        match self {
            Datum::Nat(n) => n.saturating_add(1),
            Datum::List(items) => items.size_sum().saturating_add(1),
            Datum::Alg(_, caps) => caps.size_sum().saturating_add(2),
        }
    }

    pub fn as_nat(&self) -> Option<u64> {
        match self {
            Datum::Nat(n) => Some(*n),
            _ => None,
        }
    }

    pub fn as_list(&self) -> Option<&[Datum]> {
        match self {
            Datum::List(items) => Some(items.as_slice()),
            _ => None,
        }
    }

    pub fn as_alg(&self) -> Option<(ProgramId, &[Datum])> {
        match self {
            Datum::Alg(p, caps) => Some((*p, caps.as_slice())),
            _ => None,
        }
    }

    pub fn is_alg(&self) -> bool {
        matches!(self, Datum::Alg(..))
    }

    /// True iff this is a 3-item list headed by an algorithm.
    pub fn is_statement(&self) -> bool {
        matches!(self.as_list(), Some([Datum::Alg(..), _, _]))
    }

    fn tag(&self) -> u8 {
        match self {
            Datum::Nat(_) => 0,
            Datum::List(_) => 1,
            Datum::Alg(..) => 2,
        }
    }

    /// Visit every program mentioned anywhere inside the datum.
    pub fn programs(&self, f: &mut impl FnMut(ProgramId)) {
        match self {
            Datum::Nat(_) => {}
            Datum::List(items) => items.iter().for_each(|d| d.programs(f)),
            Datum::Alg(p, caps) => {
                f(*p);
                caps.iter().for_each(|d| d.programs(f));
            }
        }
    }
}

impl From<u64> for Datum {
    fn from(n: u64) -> Self {
        Datum::Nat(n)
    }
}

impl fmt::Debug for Datum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Datum::Nat(n) => write!(f, "{n}"),
            Datum::List(items) => {
                f.write_str("[")?;
                for (i, d) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    write!(f, "{d:?}")?;
                }
                f.write_str("]")
            }
            Datum::Alg(p, caps) => {
                write!(f, "(alg {p}")?;
                for d in caps.iter() {
                    write!(f, " {d:?}")?;
                }
                f.write_str(")")
            }
        }
    }
}

/// Total order: size, then variant (Nat < List < Alg), then components.
pub fn canonical_compare(a: &Datum, b: &Datum) -> Ordering {
    a.size()
        .cmp(&b.size())
        .then_with(|| a.tag().cmp(&b.tag()))
        .then_with(|| match (a, b) {
            (Datum::Nat(x), Datum::Nat(y)) => x.cmp(y),
            (Datum::List(x), Datum::List(y)) => compare_seq(x, y),
            (Datum::Alg(p, x), Datum::Alg(q, y)) => {
                p.index().cmp(&q.index()).then_with(|| compare_seq(x, y))
            }
            _ => unreachable!("tags already compared"),
        })
}

fn compare_seq(a: &[Datum], b: &[Datum]) -> Ordering {
    if std::ptr::eq(a, b) {
        return Ordering::Equal;
    }
    for (x, y) in a.iter().zip(b) {
        match canonical_compare(x, y) {
            Ordering::Equal => continue,
            ord => return ord,
        }
    }
    a.len().cmp(&b.len())
}

/// Newtype giving `Datum` the canonical order, for sorted containers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Canonical(pub Datum);

impl Ord for Canonical {
    fn cmp(&self, other: &Self) -> Ordering {
        canonical_compare(&self.0, &other.0)
    }
}

impl PartialOrd for Canonical {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// The program alphabet that bounds enumeration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Universe {
    programs: Vec<ProgramId>,
}

impl Universe {
    pub fn new(programs: impl IntoIterator<Item = ProgramId>) -> Self {
        let mut programs: Vec<_> = programs.into_iter().collect();
        programs.sort();
        programs.dedup();
        Universe { programs }
    }

    pub fn full() -> Self {
        Universe::new(ProgramId::all())
    }

    /// IDENTITY, LOOP and the three connectives.
    pub fn reduced() -> Self {
        Universe::new([
            ProgramId::Identity,
            ProgramId::Loop,
            ProgramId::And,
            ProgramId::Or,
            ProgramId::SNeg,
        ])
    }

    pub fn programs(&self) -> &[ProgramId] {
        &self.programs
    }

    pub fn contains(&self, p: ProgramId) -> bool {
        self.programs.binary_search(&p).is_ok()
    }

    /// True iff `d` is among the data enumerated over this universe: every
    /// algorithm inside it is in the universe with its program's arity.
    pub fn covers(&self, d: &Datum) -> bool {
        match d {
            Datum::Nat(_) => true,
            Datum::List(items) => items.iter().all(|x| self.covers(x)),
            Datum::Alg(p, caps) => {
                self.contains(*p) && caps.len() == p.arity() && caps.iter().all(|x| self.covers(x))
            }
        }
    }
}

impl Default for Universe {
    fn default() -> Self {
        Universe::full()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("enumeration of data up to size {max_size} exceeds the cap of {cap} items")]
pub struct CapExceeded {
    pub max_size: u64,
    pub cap: usize,
}

pub const DEFAULT_ENUM_CAP: usize = 2_000_000;

/// Memoized per-size tables of data over a universe, in canonical order.
///
/// Only algorithms whose capture count matches their program's arity are
/// generated.
pub struct Enumerator {
    universe: Universe,
    cap: usize,
    // tables[s] holds the data of size exactly s; tables[0] is empty.
    tables: Vec<Arc<[Datum]>>,
    total: usize,
}

impl Enumerator {
    pub fn new(universe: Universe, cap: usize) -> Self {
        Enumerator {
            universe,
            cap,
            tables: vec![Arc::from(Vec::new())],
            total: 0,
        }
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    /// The data of size exactly `s`.
    pub fn of_size(&mut self, s: u64) -> Result<Arc<[Datum]>, CapExceeded> {
        let s = usize::try_from(s).unwrap_or(usize::MAX);
        while self.tables.len() <= s {
            let next = self.tables.len();
            let table = self.build(next)?;
            self.total += table.len();
            self.tables.push(table.into());
        }
        Ok(self.tables[s].clone())
    }

    /// Tables for sizes `0..=s`.
    pub fn tables_upto(&mut self, s: u64) -> Result<Vec<Arc<[Datum]>>, CapExceeded> {
        self.of_size(s)?;
        Ok(self.tables[..=s as usize].to_vec())
    }

    fn check(&self, extra: usize, s: usize) -> Result<(), CapExceeded> {
        if self.total + extra > self.cap {
            Err(CapExceeded {
                max_size: s as u64,
                cap: self.cap,
            })
        } else {
            Ok(())
        }
    }

    fn build(&self, s: usize) -> Result<Vec<Datum>, CapExceeded> {
        let mut out = vec![Datum::Nat(s as u64 - 1)];
        // Lists: items of total size s - 1 in lexicographic order.
        let mut seqs = Vec::new();
        self.sequences(s - 1, None, &mut Vec::new(), &mut seqs, s)?;
        out.extend(seqs.into_iter().map(Datum::list));
        if s >= 2 {
            for &p in self.universe.programs() {
                let mut caps = Vec::new();
                self.sequences(s - 2, Some(p.arity()), &mut Vec::new(), &mut caps, s)?;
                out.extend(caps.into_iter().map(|c| Datum::alg(p, c)));
                self.check(out.len(), s)?;
            }
        }
        self.check(out.len(), s)?;
        Ok(out)
    }

    // All sequences with total size `budget` (and exactly `len` items if given),
    // appended to `out` in lexicographic canonical order.
    fn sequences(
        &self,
        budget: usize,
        len: Option<usize>,
        prefix: &mut Vec<Datum>,
        out: &mut Vec<Vec<Datum>>,
        s: usize,
    ) -> Result<(), CapExceeded> {
        if budget == 0 {
            if len.is_none_or(|l| l == 0) {
                out.push(prefix.clone());
                self.check(out.len(), s)?;
            }
            return Ok(());
        }
        if len == Some(0) {
            return Ok(());
        }
        for size in 1..=budget {
            for d in self.tables[size].iter() {
                prefix.push(d.clone());
                self.sequences(budget - size, len.map(|l| l - 1), prefix, out, s)?;
                prefix.pop();
            }
        }
        Ok(())
    }

    /// Algorithms of the universe with size at most `max`, in canonical order.
    pub fn algorithms_upto(&mut self, max: u64) -> Result<Vec<Datum>, CapExceeded> {
        Ok(self
            .tables_upto(max)?
            .iter()
            .flat_map(|t| t.iter().filter(|d| d.is_alg()).cloned().collect::<Vec<_>>())
            .collect())
    }

    /// Visit the statements of size exactly `s` in canonical order.
    ///
    /// Tables are materialized before the first visit so `f` may freely use
    /// other enumerators (or this one, through a fresh borrow).
    pub fn statement_plan(&mut self, s: u64) -> Result<StatementPlan, CapExceeded> {
        let tables = if s >= 5 {
            self.tables_upto(s - 3)?
        } else {
            Vec::new()
        };
        let algs = tables
            .iter()
            .flat_map(|t| t.iter().filter(|d| d.is_alg()).cloned().collect::<Vec<_>>())
            .collect();
        Ok(StatementPlan {
            size: s,
            tables,
            algs,
        })
    }
}

/// Materialized tables sufficient to list every statement of one size.
pub struct StatementPlan {
    size: u64,
    tables: Vec<Arc<[Datum]>>,
    algs: Vec<Datum>,
}

impl StatementPlan {
    /// Calls `f` on each statement in canonical order, stopping at the first error.
    pub fn try_for_each<E>(&self, mut f: impl FnMut(Datum) -> Result<(), E>) -> Result<(), E> {
        let s = self.size;
        if s < 5 {
            return Ok(());
        }
        for alpha in &self.algs {
            let rest = s - 1 - alpha.size();
            if rest < 2 {
                continue;
            }
            for su in 1..rest {
                let sv = rest - su;
                for u in self.tables[su as usize].iter() {
                    for v in self.tables[sv as usize].iter() {
                        f(Datum::list(vec![alpha.clone(), u.clone(), v.clone()]))?;
                    }
                }
            }
        }
        Ok(())
    }

    pub fn collect(&self) -> Vec<Datum> {
        let mut out = Vec::new();
        let _ = self.try_for_each::<()>(|d| {
            out.push(d);
            Ok(())
        });
        out
    }
}

/// Every datum over `universe` with size at most `max_size`, in canonical order.
pub fn enumerate_data(
    universe: &Universe,
    max_size: u64,
    cap: usize,
) -> Result<Vec<Datum>, CapExceeded> {
    let mut e = Enumerator::new(universe.clone(), cap);
    let tables = e.tables_upto(max_size)?;
    Ok(tables.iter().flat_map(|t| t.iter().cloned()).collect())
}
