use std::fmt;

/// Size of the fixed variable universe.
pub const NVARS: usize = 16;

const NAMES: [&str; NVARS] = [
    "u", "u'", "u''", "u'''", "y", "y'", "y''", "y'''", "x", "x2", "x3", "z", "w", "t", "a0", "a1",
];

/// A variable of the fixed universe, in monomial-order significance:
/// `u, u', u'', u''', y, y', y'', y''', x, x2, x3, z, w, t, a0, a1`.
///
/// `y⁽ⁱ⁾` is the symbol `yᵢ` of an input-output equation; `x = x1, x2, x3`
/// are states.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(u8);

impl Var {
    pub const U: Var = Var(0);
    pub const Y: Var = Var(4);
    pub const X1: Var = Var(8);
    pub const X2: Var = Var(9);
    pub const X3: Var = Var(10);
    pub const Z: Var = Var(11);
    pub const W: Var = Var(12);
    pub const T: Var = Var(13);
    pub const A0: Var = Var(14);
    pub const A1: Var = Var(15);

    pub const MAX_DERIVATIVE: usize = 3;

    /// `u⁽ᵏ⁾`.
    pub fn u(k: usize) -> Var {
        assert!(k <= Self::MAX_DERIVATIVE, "u derivative order {k} out of range");
        Var(k as u8)
    }

    /// `y⁽ᵏ⁾`.
    pub fn y(k: usize) -> Var {
        assert!(k <= Self::MAX_DERIVATIVE, "y derivative order {k} out of range");
        Var(4 + k as u8)
    }

    /// State `xᵢ`, 1-based.
    pub fn x(i: usize) -> Var {
        assert!((1..=3).contains(&i), "state index {i} out of range");
        Var(7 + i as u8)
    }

    pub fn from_index(i: usize) -> Var {
        assert!(i < NVARS);
        Var(i as u8)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn name(self) -> &'static str {
        NAMES[self.index()]
    }

    pub fn u_order(self) -> Option<usize> {
        (self.0 < 4).then_some(self.0 as usize)
    }

    pub fn y_order(self) -> Option<usize> {
        (4..8).contains(&self.0).then(|| self.0 as usize - 4)
    }

    pub fn state_index(self) -> Option<usize> {
        (8..11).contains(&self.0).then(|| self.0 as usize - 7)
    }

    pub fn all() -> impl Iterator<Item = Var> {
        (0..NVARS).map(Var::from_index)
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A set of variables as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct VarSet(u16);

impl VarSet {
    pub fn empty() -> Self {
        VarSet(0)
    }

    pub fn of(vars: &[Var]) -> Self {
        let mut s = VarSet(0);
        for v in vars {
            s.insert(*v);
        }
        s
    }

    /// `u, u', u'', u'''`.
    pub fn inputs() -> Self {
        VarSet(0b1111)
    }

    /// `y, y', y'', y'''`.
    pub fn outputs() -> Self {
        VarSet(0b1111 << 4)
    }

    /// `x1, x2, x3`.
    pub fn states() -> Self {
        VarSet(0b111 << 8)
    }

    pub fn insert(&mut self, v: Var) {
        self.0 |= 1 << v.index();
    }

    pub fn contains(self, v: Var) -> bool {
        self.0 & (1 << v.index()) != 0
    }

    pub fn union(self, o: VarSet) -> VarSet {
        VarSet(self.0 | o.0)
    }

    pub fn intersect(self, o: VarSet) -> VarSet {
        VarSet(self.0 & o.0)
    }

    pub fn minus(self, o: VarSet) -> VarSet {
        VarSet(self.0 & !o.0)
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, o: VarSet) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn iter(self) -> impl Iterator<Item = Var> {
        (0..NVARS).filter(move |i| self.0 & (1 << i) != 0).map(Var::from_index)
    }

    /// The highest-order `u⁽ᵏ⁾` present, if any.
    pub fn max_u_order(self) -> Option<usize> {
        self.iter().filter_map(Var::u_order).max()
    }

    pub fn max_y_order(self) -> Option<usize> {
        self.iter().filter_map(Var::y_order).max()
    }
}

impl fmt::Debug for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
