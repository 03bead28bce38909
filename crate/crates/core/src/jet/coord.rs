use std::fmt;

/// A coordinate of the jet space of a scalar field `u(t, y)`.
///
/// The derived order is the total coordinate order used everywhere:
/// independent variables, then the dependent variable, then jets by order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Coord {
    T,
    Y,
    U,
    /// `u_(l) = d^l u / dy^l` with `l >= 1`; build through [`Coord::jet`].
    Jet(u32),
}

impl Coord {
    /// `u_(l)`, where `u_(0)` is the dependent variable itself.
    pub fn jet(l: u32) -> Coord {
        if l == 0 {
            Coord::U
        } else {
            Coord::Jet(l)
        }
    }

    /// Coordinates on the space of 0-jets: `t`, `y`, `u`.
    pub fn is_zero_jet(self) -> bool {
        !matches!(self, Coord::Jet(_))
    }

    /// Derivative order for `u` and its jets.
    pub fn jet_order(self) -> Option<u32> {
        match self {
            Coord::U => Some(0),
            Coord::Jet(l) => Some(l),
            _ => None,
        }
    }

    pub fn name(self) -> String {
        match self {
            Coord::T => "t".into(),
            Coord::Y => "y".into(),
            Coord::U => "u".into(),
            Coord::Jet(l) => format!("u_{l}"),
        }
    }

    /// Inverse of [`Coord::name`]; also accepts `u_0`.
    pub fn from_name(s: &str) -> Option<Coord> {
        match s {
            "t" => Some(Coord::T),
            "y" => Some(Coord::Y),
            "u" => Some(Coord::U),
            _ => {
                let l: u32 = s.strip_prefix("u_")?.parse().ok()?;
                Some(Coord::jet(l))
            }
        }
    }
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}
