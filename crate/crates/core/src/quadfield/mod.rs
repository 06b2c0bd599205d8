//! Real quadratic fields: continued fractions, units, Pell equations and
//! class numbers.

mod analytic;
mod cf;
mod forms;

pub use analytic::{
    class_number_bound_check, class_number_dirichlet, class_number_dirichlet_with, is_fundamental_discriminant,
    l1_series_estimate, regulator, regulator_extended, ClassNumberEstimate, QuadraticUnit, SeriesEstimate,
};
pub use cf::{
    cf_sqrt, fundamental_unit, is_discriminant, pell_min_solution, period_convergent, unit_of_discriminant,
    CFExpansion, FundamentalUnit, PellSolution,
};
pub use forms::{form_class_number, form_class_number_wide, form_cycles, reduced_forms, QuadForm};

