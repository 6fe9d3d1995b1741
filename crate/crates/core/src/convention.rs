//! Named readings of the synthesis formulas, selectable at run time.

use crate::classifier::{
    roundtrip_with, synthesize_with, ModuleDescriptor, RoundtripReport, SynthesisRules,
    STANDARD_RULES,
};
use crate::error::AlgebraError;
use crate::quasipoly::QuasiPolynomial;

pub trait SynthesisConvention: Send + Sync {
    fn name(&self) -> &'static str;

    fn summary(&self) -> &'static str;

    fn synthesize(
        &self,
        p12: &QuasiPolynomial,
        p21: &QuasiPolynomial,
    ) -> Result<Vec<ModuleDescriptor>, AlgebraError>;

    fn roundtrip(&self, p12: &QuasiPolynomial, p21: &QuasiPolynomial) -> RoundtripReport;
}

/// A convention fully described by [`SynthesisRules`].
struct RuleConvention {
    name: &'static str,
    summary: &'static str,
    rules: SynthesisRules,
}

impl SynthesisConvention for RuleConvention {
    fn name(&self) -> &'static str {
        self.name
    }

    fn summary(&self) -> &'static str {
        self.summary
    }

    fn synthesize(
        &self,
        p12: &QuasiPolynomial,
        p21: &QuasiPolynomial,
    ) -> Result<Vec<ModuleDescriptor>, AlgebraError> {
        synthesize_with(p12, p21, self.rules)
    }

    fn roundtrip(&self, p12: &QuasiPolynomial, p21: &QuasiPolynomial) -> RoundtripReport {
        roundtrip_with(p12, p21, self.rules)
    }
}

pub struct ConventionRegistry {
    entries: Vec<Box<dyn SynthesisConvention>>,
}

impl Default for ConventionRegistry {
    fn default() -> Self {
        let mut r = ConventionRegistry { entries: Vec::new() };
        r.register(Box::new(RuleConvention {
            name: "standard",
            summary: "c = P21(0) - P12(0); lambda_i accumulated over k < i",
            rules: STANDARD_RULES,
        }));
        r.register(Box::new(RuleConvention {
            name: "reversed-charge",
            summary: "c = P12(0) - P21(0); fails the round trip",
            rules: SynthesisRules {
                charge_sign: -1,
                sum_from_above: false,
            },
        }));
        r.register(Box::new(RuleConvention {
            name: "literal-display",
            summary: "lambda_i accumulated over k > i; fails the round trip",
            rules: SynthesisRules {
                charge_sign: 1,
                sum_from_above: true,
            },
        }));
        r
    }
}

impl ConventionRegistry {
    /// Later registrations shadow earlier ones with the same name.
    pub fn register(&mut self, c: Box<dyn SynthesisConvention>) {
        self.entries.retain(|e| e.name() != c.name());
        self.entries.push(c);
    }

    pub fn get(&self, name: &str) -> Option<&dyn SynthesisConvention> {
        self.entries.iter().find(|e| e.name() == name).map(|b| b.as_ref())
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.iter().map(|e| e.name()).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &dyn SynthesisConvention> {
        self.entries.iter().map(|b| b.as_ref())
    }
}
