use tangent_finsler::flag::kc_randers_douglas;
use tangent_finsler::{
    algebras, classify_base, classify_fc, classify_fv, AlgVector, AlphaBetaStructure, CaseTag, FlagPlane,
    MetricLieAlgebra, MetricTensor, PhiFamily, Tolerances,
};

fn main() -> Result<(), tangent_finsler::Error> {
    let tol = Tolerances::default();
    let space = MetricLieAlgebra::new(algebras::heisenberg3(), MetricTensor::identity(3), &tol)?;
    let drift = AlgVector::new(vec![0.3, 0.0, 0.0]);
    let f = AlphaBetaStructure::new(space, drift, PhiFamily::randers(), tol)?;

    for (name, c) in [("F", classify_base(&f)), ("F^c", classify_fc(&f)?), ("F^v", classify_fv(&f)?)] {
        println!("{name}: berwald {}, douglas {:?}", c.berwald, c.douglas);
    }

    let y = AlgVector::new(vec![0.0, 1.0, 1.0]);
    let v = AlgVector::new(vec![1.0, 0.0, 0.0]);
    let plane = FlagPlane::orthonormalized(f.geometry().metric(), CaseTag::CC, &y, &v, tol.plane)?;
    println!("K(F^c; cc) = {:?}", kc_randers_douglas(&f, &plane)?.value);
    Ok(())
}
