//! Collections, decomposition systems and relations on `D ∪ {∅}`.
//!
//! Chains carry explicit order, outermost set first, because the boundary
//! relations are order-sensitive. Enumerators yield a deterministic
//! canonical order (lexicographic on encoded subsets) so sup computations
//! and goldens are reproducible.

use crate::setfn::{GroundSet, Mask};
use crate::{Error, Result};

/// Bell-number guard for partition enumeration.
pub const MAX_PARTITION_GROUND: usize = 9;
/// Chain enumeration guard without a length cap.
pub const MAX_CHAIN_GROUND: usize = 5;

/// A set of distinct nonempty subsets, optionally with significant order.
///
/// Ordered collections are chains, stored outermost-first:
/// `members[0] = D_1 ⊃ D_2 ⊃ … ⊃ D_l = members[l-1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Collection {
    ground: GroundSet,
    members: Vec<Mask>,
    ordered: bool,
}

impl Collection {
    pub fn new(ground: GroundSet, mut members: Vec<Mask>) -> Result<Self> {
        check_members(ground, &members)?;
        members.sort_unstable();
        members.dedup();
        Ok(Collection {
            ground,
            members,
            ordered: false,
        })
    }

    /// Chain constructor; `members` must be strictly nested, outermost first.
    pub fn new_chain(ground: GroundSet, members: Vec<Mask>) -> Result<Self> {
        check_members(ground, &members)?;
        for w in members.windows(2) {
            let (outer, inner) = (w[0], w[1]);
            if inner & outer != inner || inner == outer {
                return Err(Error::Malformed(format!(
                    "not a strictly nested chain: {} ⊄ {}",
                    ground.format_subset(inner),
                    ground.format_subset(outer)
                )));
            }
        }
        Ok(Collection {
            ground,
            members,
            ordered: true,
        })
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    pub fn members(&self) -> &[Mask] {
        &self.members
    }

    pub fn is_ordered(&self) -> bool {
        self.ordered
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_partition(&self) -> bool {
        let mut seen: Mask = 0;
        for &m in &self.members {
            if seen & m != 0 {
                return false;
            }
            seen |= m;
        }
        seen == self.ground.full_mask()
    }
}

fn check_members(ground: GroundSet, members: &[Mask]) -> Result<()> {
    if members.is_empty() {
        return Err(Error::Malformed("collection must be nonempty".into()));
    }
    for &m in members {
        if m == 0 {
            return Err(Error::Malformed("collection member must be nonempty".into()));
        }
        if !ground.contains_mask(m) {
            return Err(Error::Malformed(format!("mask {m:#b} outside ground set")));
        }
    }
    let mut sorted = members.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Malformed("collection members must be distinct".into()));
    }
    Ok(())
}

/// Every set partition of `[n]`, canonical order, `B(n)` of them.
pub fn enumerate_partitions(ground: GroundSet) -> Result<Vec<Collection>> {
    let n = ground.n();
    if n > MAX_PARTITION_GROUND {
        return Err(Error::Capacity(format!(
            "partition enumeration supports n ≤ {MAX_PARTITION_GROUND}, got {n}"
        )));
    }
    // restricted growth strings: rgs[0] = 0, rgs[i] ≤ max(rgs[..i]) + 1
    let mut out = Vec::new();
    let mut rgs = vec![0usize; n];
    loop {
        let blocks = rgs.iter().copied().max().unwrap() + 1;
        let mut masks = vec![0 as Mask; blocks];
        for (i, &b) in rgs.iter().enumerate() {
            masks[b] |= 1 << i;
        }
        masks.sort_unstable();
        out.push(Collection {
            ground,
            members: masks,
            ordered: false,
        });
        // next restricted growth string
        let mut i = n;
        loop {
            if i == 1 {
                // sort collections canonically before returning
                out.sort_by(|a, b| a.members.cmp(&b.members));
                return Ok(out);
            }
            i -= 1;
            let cap = rgs[..i].iter().copied().max().unwrap() + 1;
            if rgs[i] < cap {
                rgs[i] += 1;
                for r in rgs.iter_mut().skip(i + 1) {
                    *r = 0;
                }
                break;
            }
        }
    }
}

/// Every strictly nested chain of nonempty subsets, with order, canonical
/// enumeration.
///
/// Strict nesting bounds the length by `n`; `max_len` tightens the bound
/// and lifts the `n ≤ 5` guard when ≤ 2.
pub fn enumerate_chains(ground: GroundSet, max_len: Option<usize>) -> Result<Vec<Collection>> {
    let n = ground.n();
    if n > MAX_CHAIN_GROUND && max_len.map_or(true, |l| l > 2) {
        return Err(Error::Capacity(format!(
            "chain enumeration supports n ≤ {MAX_CHAIN_GROUND} (or max_len ≤ 2), got {n}"
        )));
    }
    let cap = max_len.unwrap_or(n).min(n);
    let mut out = Vec::new();
    // ascending masks; prefix holds the chain innermost-first
    fn extend(
        ground: GroundSet,
        prefix: &mut Vec<Mask>,
        cap: usize,
        out: &mut Vec<Collection>,
    ) {
        let last = *prefix.last().unwrap();
        let mut rev: Vec<Mask> = prefix.iter().rev().copied().collect();
        out.push(Collection {
            ground,
            members: std::mem::take(&mut rev),
            ordered: true,
        });
        if prefix.len() == cap {
            return;
        }
        for next in (last + 1)..=(ground.full_mask()) {
            if next & last == last && next != last {
                prefix.push(next);
                extend(ground, prefix, cap, out);
                prefix.pop();
            }
        }
    }
    for start in ground.nonempty_subsets() {
        let mut prefix = vec![start];
        extend(ground, &mut prefix, cap, &mut out);
    }
    out.sort_by(|a, b| a.members.cmp(&b.members));
    Ok(out)
}

/// Relation over raw subset masks; `0` stands for `∅`. Pairs may reference
/// subsets outside the base collection (complements, boundary ∅).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub pairs: Vec<(Mask, Mask)>,
}

/// Built-in relation shapes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RelationKind {
    /// `{(D, D)}`
    Diagonal,
    /// `{(D, D^c)}`
    Complement,
    /// chain pairs with the next-inner set, `(D_i, D_{i+1})`, `D_{l+1} = ∅`
    RPlus,
    /// chain pairs with the next-outer set, `(D_i, D_{i-1})`, `D_0 = ∅`
    RMinus,
    /// explicit pair list
    Custom(Vec<(Mask, Mask)>),
}

/// Builds a relation over a collection.
pub fn make_relation(base: &Collection, kind: &RelationKind) -> Result<Relation> {
    let pairs = match kind {
        RelationKind::Diagonal => base.members().iter().map(|&d| (d, d)).collect(),
        RelationKind::Complement => base
            .members()
            .iter()
            .map(|&d| (d, base.ground().complement(d)))
            .collect(),
        RelationKind::RPlus => {
            require_chain(base)?;
            let m = base.members();
            (0..m.len())
                .map(|i| (m[i], if i + 1 < m.len() { m[i + 1] } else { 0 }))
                .collect()
        }
        RelationKind::RMinus => {
            require_chain(base)?;
            let m = base.members();
            (0..m.len())
                .map(|i| (m[i], if i == 0 { 0 } else { m[i - 1] }))
                .collect()
        }
        RelationKind::Custom(pairs) => pairs.clone(),
    };
    Ok(Relation { pairs })
}

fn require_chain(base: &Collection) -> Result<()> {
    if !base.is_ordered() {
        return Err(Error::Precondition(
            "boundary relations require an ordered chain base".into(),
        ));
    }
    Ok(())
}

/// Decomposition systems: symbolic tags expanded lazily, or explicit lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DecompositionSystem {
    /// `{Σ₀}`, the single maximal collection
    One,
    /// all set partitions of `X`
    Part,
    /// all chains with order
    Chain,
    /// `{{D} : D ∈ Σ₀}`
    Singletons,
    /// explicit collections, taken as-is
    Explicit(Vec<Collection>),
}

impl DecompositionSystem {
    /// Default relation shape paired with the system.
    pub fn default_relation(&self) -> RelationKind {
        match self {
            DecompositionSystem::Chain => RelationKind::RPlus,
            _ => RelationKind::Diagonal,
        }
    }
}

/// Expands a system into its collections in canonical order.
pub fn expand_system(sys: &DecompositionSystem, ground: GroundSet) -> Result<Vec<Collection>> {
    match sys {
        DecompositionSystem::One => {
            let members: Vec<Mask> = ground.nonempty_subsets().collect();
            Ok(vec![Collection {
                ground,
                members,
                ordered: false,
            }])
        }
        DecompositionSystem::Part => enumerate_partitions(ground),
        DecompositionSystem::Chain => enumerate_chains(ground, None),
        DecompositionSystem::Singletons => Ok(ground
            .nonempty_subsets()
            .map(|d| Collection {
                ground,
                members: vec![d],
                ordered: false,
            })
            .collect()),
        DecompositionSystem::Explicit(cs) => {
            for c in cs {
                if c.ground() != ground {
                    return Err(Error::GroundMismatch(ground.n(), c.ground().n()));
                }
            }
            Ok(cs.clone())
        }
    }
}
