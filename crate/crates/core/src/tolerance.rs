/// Default absolute tolerance for geometric predicates.
pub const DEFAULT_EPS: f64 = 1e-9;

/// Crossings with `|sin(angle)|` below this are treated as tangencies.
pub const MIN_CROSSING_SIN: f64 = 1e-6;

/// A regular curve turns by strictly less than `PI - MIN_TURN_GAP` at every vertex.
pub const MIN_TURN_GAP: f64 = 1e-4;

/// Default maximal word length searched for hyperbolic deck translates.
pub const DEFAULT_WORD_BOUND: usize = 8;

/// Environment variable overriding `DEFAULT_EPS`.
pub const EPS_ENV: &str = "CURVEWIND_EPS";

/// Numeric tolerances shared by the predicates.
///
/// `eps` is the raw comparison tolerance; genericity margins are `1e3 * eps`
/// so that every accepted predicate decision sits far from its threshold.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerance {
    pub eps: f64,
    pub word_bound: usize,
}

impl Tolerance {
    pub fn new(eps: f64) -> Self {
        assert!(eps > 0.0 && eps.is_finite(), "eps must be positive");
        Tolerance {
            eps,
            word_bound: DEFAULT_WORD_BOUND,
        }
    }

    /// Reads `CURVEWIND_EPS`, falling back to the default.
    pub fn from_env() -> Result<Self, crate::Error> {
        match std::env::var(EPS_ENV) {
            Ok(v) => {
                let eps: f64 = v
                    .trim()
                    .parse()
                    .map_err(|_| crate::Error::Parse(format!("{EPS_ENV}={v:?}")))?;
                if !(eps > 0.0 && eps.is_finite()) {
                    return Err(crate::Error::Parse(format!(
                        "{EPS_ENV} must be positive, got {v:?}"
                    )));
                }
                Ok(Tolerance::new(eps))
            }
            Err(_) => Ok(Tolerance::default()),
        }
    }

    /// Minimum clearance enforced by the genericity validator.
    pub fn margin(&self) -> f64 {
        1e3 * self.eps
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance::new(DEFAULT_EPS)
    }
}
