//! Bisequents `G => D | P => S` and the axiomatic test.
//!
//! Slots are kept sorted, so the derived equality is multiset equality and a
//! bisequent doubles as its own canonical memo key.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::formula::{shift_offset, split_top_level, ConnectiveId, Constant, Formula};
use crate::logics::{LogicDef, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SlotId {
    Ant1,
    Suc1,
    Ant2,
    Suc2,
}

impl SlotId {
    pub const ALL: [SlotId; 4] = [SlotId::Ant1, SlotId::Suc1, SlotId::Ant2, SlotId::Suc2];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            SlotId::Ant1 => "ant1",
            SlotId::Suc1 => "suc1",
            SlotId::Ant2 => "ant2",
            SlotId::Suc2 => "suc2",
        }
    }

    /// What a falsifying assignment demands of a formula in this slot.
    pub fn constraint(self, v: Value) -> bool {
        match self {
            SlotId::Ant1 => v == Value::One,
            SlotId::Suc1 => v != Value::One,
            SlotId::Ant2 => v != Value::Zero,
            SlotId::Suc2 => v == Value::Zero,
        }
    }

    /// The values allowed by [`SlotId::constraint`], as a bit set over
    /// value indices.
    pub fn mask(self) -> u8 {
        Value::ALL
            .iter()
            .filter(|&&v| self.constraint(v))
            .fold(0, |m, v| m | 1 << v.index())
    }
}

impl fmt::Display for SlotId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SlotId {
    type Err = Error;
    fn from_str(s: &str) -> Result<SlotId> {
        SlotId::ALL
            .into_iter()
            .find(|slot| slot.name() == s)
            .ok_or_else(|| Error::Catalog(format!("`{s}` is not a slot (ant1, suc1, ant2, suc2)")))
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Sequent {
    pub antecedent: Vec<Formula>,
    pub succedent: Vec<Formula>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Bisequent {
    slots: [Vec<Formula>; 4],
}

impl Bisequent {
    pub fn new(ant1: Vec<Formula>, suc1: Vec<Formula>, ant2: Vec<Formula>, suc2: Vec<Formula>) -> Self {
        let mut slots = [ant1, suc1, ant2, suc2];
        for s in &mut slots {
            s.sort();
        }
        Bisequent { slots }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn first(&self) -> Sequent {
        Sequent {
            antecedent: self.slots[0].clone(),
            succedent: self.slots[1].clone(),
        }
    }

    pub fn second(&self) -> Sequent {
        Sequent {
            antecedent: self.slots[2].clone(),
            succedent: self.slots[3].clone(),
        }
    }

    /// The formulas in `slot`, sorted.
    pub fn slot(&self, slot: SlotId) -> &[Formula] {
        &self.slots[slot.index()]
    }

    pub fn insert(&mut self, slot: SlotId, f: Formula) {
        let s = &mut self.slots[slot.index()];
        let at = s.partition_point(|g| g <= &f);
        s.insert(at, f);
    }

    pub fn with(mut self, slot: SlotId, f: Formula) -> Self {
        self.insert(slot, f);
        self
    }

    pub fn remove_at(&mut self, slot: SlotId, index: usize) -> Formula {
        self.slots[slot.index()].remove(index)
    }

    /// Multiset union, slot by slot.
    pub fn union(&self, other: &Bisequent) -> Bisequent {
        let mut out = self.clone();
        for slot in SlotId::ALL {
            for f in other.slot(slot) {
                out.insert(slot, f.clone());
            }
        }
        out
    }

    pub fn formulas(&self) -> impl Iterator<Item = (SlotId, &Formula)> {
        SlotId::ALL
            .into_iter()
            .flat_map(move |s| self.slot(s).iter().map(move |f| (s, f)))
    }

    pub fn len(&self) -> usize {
        self.slots.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        for (_, f) in self.formulas() {
            f.collect_atoms(&mut out);
        }
        out
    }

    /// Every formula is an atom or a constant.
    pub fn is_atomic(&self) -> bool {
        self.formulas().all(|(_, f)| f.is_atomic())
    }

    /// Parses `G1 => D1 | G2 => D2`. The separating `|` is the only `|` at
    /// parenthesis depth zero between the two arrows; a disjunction there must
    /// be parenthesized.
    pub fn parse(logic: &LogicDef, text: &str) -> Result<Self> {
        let arrows: Vec<usize> = text.match_indices("=>").map(|(i, _)| i).collect();
        if arrows.len() != 2 {
            return Err(Error::syntax(
                arrows.get(2).copied().unwrap_or(text.len()),
                "a bisequent has exactly two `=>`",
            ));
        }
        let (a1, a2) = (arrows[0], arrows[1]);
        let middle = &text[a1 + 2..a2];
        let bars: Vec<(usize, &str)> = split_top_level(middle, b'|');
        if bars.len() != 2 {
            let offset = if bars.len() < 2 { a2 } else { a1 + 2 + bars[2].0 - 1 };
            return Err(Error::syntax(
                offset,
                "expected exactly one top-level `|` between the arrows; parenthesize disjunctions",
            ));
        }
        let mid_base = a1 + 2;
        let parts = [
            (0, &text[..a1]),
            (mid_base + bars[0].0, bars[0].1),
            (mid_base + bars[1].0, bars[1].1),
            (a2 + 2, &text[a2 + 2..]),
        ];
        let mut slots: [Vec<Formula>; 4] = Default::default();
        for (i, (base, piece)) in parts.into_iter().enumerate() {
            slots[i] = logic.parse_list(piece).map_err(|e| shift_offset(e, base))?;
        }
        let [a, b, c, d] = slots;
        Ok(Bisequent::new(a, b, c, d))
    }

    pub fn render(&self) -> String {
        self.to_string()
    }
}

fn render_slot(f: &mut fmt::Formatter<'_>, formulas: &[Formula]) -> fmt::Result {
    for (i, g) in formulas.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        // A bare top-level disjunction would clash with the separator.
        if g.connective() == Some(ConnectiveId::Or) {
            write!(f, "({g})")?;
        } else {
            write!(f, "{g}")?;
        }
    }
    Ok(())
}

impl fmt::Display for Bisequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pad = |f: &mut fmt::Formatter<'_>, s: &[Formula], left: bool| -> fmt::Result {
            if s.is_empty() {
                return Ok(());
            }
            if !left {
                f.write_str(" ")?;
            }
            render_slot(f, s)?;
            if left {
                f.write_str(" ")?;
            }
            Ok(())
        };
        pad(f, &self.slots[0], true)?;
        f.write_str("=>")?;
        pad(f, &self.slots[1], false)?;
        f.write_str(" | ")?;
        pad(f, &self.slots[2], true)?;
        f.write_str("=>")?;
        pad(f, &self.slots[3], false)
    }
}

fn sorted_intersect(a: &[Formula], b: &[Formula]) -> bool {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => return true,
        }
    }
    false
}

fn holds_constant(s: &[Formula], c: Constant) -> bool {
    s.contains(&Formula::Constant(c))
}

/// Identity axioms only: nonempty Γ∩Δ, Γ∩Σ or Π∩Σ.
pub fn has_identity_axiom(b: &Bisequent) -> bool {
    let [g, d, p, s] = &b.slots;
    sorted_intersect(g, d) || sorted_intersect(g, s) || sorted_intersect(p, s)
}

/// Identity axioms, constant axioms when the logic has constants, and the
/// logic's extra axiom schemata.
pub fn is_axiomatic(logic: &LogicDef, b: &Bisequent) -> bool {
    if has_identity_axiom(b) {
        return true;
    }
    if logic.constants_enabled {
        use Constant::*;
        let [g, d, p, s] = &b.slots;
        if holds_constant(d, Top)
            || holds_constant(s, Top)
            || holds_constant(g, Bottom)
            || holds_constant(p, Bottom)
            || holds_constant(g, Undef)
            || holds_constant(s, Undef)
        {
            return true;
        }
    }
    logic.extra_axiom_schemata.iter().any(|ax| ax.matches(b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logics::lookup_logic;
    use proptest::prelude::*;

    fn bs(logic: &str, text: &str) -> Bisequent {
        Bisequent::parse(&lookup_logic(logic).unwrap(), text).unwrap()
    }

    #[test]
    fn atomicity() {
        assert!(bs("K3", "p => q | => r").is_atomic());
        assert!(!bs("K3", "p & q => | =>").is_atomic());
        assert!(bs("K3", "=> | =>").is_atomic());
        assert!(bs("K3", "=> | =>").is_empty());
    }

    #[test]
    fn axiomatic_examples() {
        let k3 = lookup_logic("K3").unwrap();
        assert!(is_axiomatic(&k3, &bs("K3", "p => p | =>")));
        assert!(is_axiomatic(&k3, &bs("K3", "p => | => p")));
        assert!(is_axiomatic(&k3, &bs("K3", "=> | p & q => p & q")));
        assert!(!is_axiomatic(&k3, &bs("K3", "p => q | r => s")));
        assert!(!is_axiomatic(&k3, &bs("K3", "=> p | p =>")));
    }

    #[test]
    fn constant_axioms() {
        let k = lookup_logic("K3_const").unwrap();
        for text in [
            "=> T | =>",
            "=> | => T",
            "F => | =>",
            "=> | F =>",
            "U => | =>",
            "=> | => U",
        ] {
            assert!(is_axiomatic(&k, &bs("K3_const", text)), "{text}");
        }
        for text in ["T => | =>", "=> F | =>", "=> U | U =>"] {
            assert!(!is_axiomatic(&k, &bs("K3_const", text)), "{text}");
        }
    }

    #[test]
    fn extra_axiom_schema() {
        let l = lookup_logic("Palasinska1").unwrap();
        assert!(is_axiomatic(&l, &bs("Palasinska1", "=> | => p o1 q")));
        assert!(!is_axiomatic(&l, &bs("Palasinska1", "=> p o1 q | =>")));
    }

    #[test]
    fn parse_and_render() {
        let b = bs("K3", "q, p => (p | q) | ~r => p -> q");
        assert_eq!(b.slot(SlotId::Ant1).len(), 2);
        assert_eq!(b.render(), "p, q => (p | q) | ~r => p -> q");
        assert_eq!(bs("K3", &b.render()), b);
        assert_eq!(bs("K3", "=>|=>").render(), "=> | =>");
    }

    #[test]
    fn ambiguous_bar_is_rejected() {
        let k3 = lookup_logic("K3").unwrap();
        assert!(matches!(
            Bisequent::parse(&k3, "=> p | q | =>"),
            Err(Error::Syntax { .. })
        ));
        assert!(matches!(Bisequent::parse(&k3, "p => q"), Err(Error::Syntax { .. })));
        let err = Bisequent::parse(&k3, "=> | => p &").unwrap_err();
        assert!(matches!(err, Error::Syntax { offset: 11, .. }), "{err:?}");
    }

    #[test]
    fn slot_masks() {
        assert_eq!(SlotId::Ant1.mask(), 0b100);
        assert_eq!(SlotId::Suc1.mask(), 0b011);
        assert_eq!(SlotId::Ant2.mask(), 0b110);
        assert_eq!(SlotId::Suc2.mask(), 0b001);
    }

    fn arb_atomic() -> impl Strategy<Value = Bisequent> {
        let slot = || prop::collection::vec(prop::sample::select(vec!["p", "q", "r"]), 0..3);
        (slot(), slot(), slot(), slot()).prop_map(|(a, b, c, d)| {
            let f = |v: Vec<&str>| v.into_iter().map(Formula::atom).collect();
            Bisequent::new(f(a), f(b), f(c), f(d))
        })
    }

    proptest! {
        #[test]
        fn axiomatic_is_stable_under_weakening(b in arb_atomic(), slot in 0usize..4, atom in "[pqrs]") {
            let k3 = lookup_logic("K3").unwrap();
            if is_axiomatic(&k3, &b) {
                let w = b.clone().with(SlotId::ALL[slot], Formula::atom(&atom));
                prop_assert!(is_axiomatic(&k3, &w));
            }
        }

        #[test]
        fn order_of_insertion_is_irrelevant(mut v in prop::collection::vec("[pqr]", 0..5)) {
            let a = Bisequent::new(v.iter().map(|s| Formula::atom(s)).collect(), vec![], vec![], vec![]);
            v.reverse();
            let b = Bisequent::new(v.iter().map(|s| Formula::atom(s)).collect(), vec![], vec![], vec![]);
            prop_assert_eq!(a, b);
        }
    }
}
