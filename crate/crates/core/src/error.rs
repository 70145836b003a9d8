use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("q = {0} is not a prime >= 5")]
    InvalidModulus(u32),
    #[error("q must be ≡ 1 (mod 4), got q = {0}")]
    ModulusNotOneModFour(u32),
    #[error("q = {0} is too large (must be < 2^15)")]
    ModulusTooLarge(u32),
    #[error("polynomials over different fields (q = {0} vs q = {1})")]
    FieldMismatch(u32, u32),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("gcd of two zero polynomials is undefined")]
    GcdOfZeros,
    #[error("the zero polynomial is not allowed here")]
    ZeroPolynomial,
    #[error("expected a polynomial of degree >= 1")]
    ConstantPolynomial,
    #[error("expected a monic polynomial")]
    NotMonic,
    #[error("expected an irreducible polynomial")]
    NotIrreducible,
    #[error("expected a square-free polynomial")]
    NotSquarefree,
    #[error("expected a polynomial of odd degree, got degree {0}")]
    EvenDegree(usize),
    #[error("degree must be >= 1")]
    NonPositiveDegree,
    #[error("extension-field element is not reduced modulo the defining polynomial")]
    UnreducedElement,
    #[error("factorization does not multiply back to the polynomial")]
    InconsistentFactorization,
    #[error("cannot parse polynomial {0:?}: {1}")]
    Parse(String, String),
    #[error("L-polynomial recursion produced a non-integer coefficient at n = {0}")]
    NonIntegralCoefficient(usize),
    #[error("L-polynomial sanity check failed: {0}")]
    LPolynomialCheck(String),
    #[error("root finder did not converge after {0} iterations")]
    RootFinder(usize),
    #[error("k must be in 1..=3, got {0}")]
    UnsupportedMomentOrder(u32),
    #[error("g must be >= 1")]
    GenusTooSmall,
    #[error("estimated {estimated:.3e} field operations exceeds the budget of {budget:.3e}; raise the budget to run anyway")]
    BudgetExceeded { estimated: f64, budget: f64 },
    #[error("degree {needed} exceeds the precomputed table (max degree {max})")]
    TableTooSmall { needed: usize, max: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
