use natop_core::ansatz::{self, Constraint};
use natop_core::expr::InputReduction;
use natop_core::{connection, TensorSignature};

fn run(sig: TensorSignature, cons: &[Constraint]) -> (usize, usize, usize) {
    let mut fam = ansatz::generate(&sig).unwrap();
    for c in cons {
        fam = ansatz::apply_symmetry(&fam, *c).unwrap();
    }
    let sys = connection::extract_system(&fam).unwrap();
    let basis = connection::solve(&sys, &fam).unwrap();
    (fam.len(), sys.rows.rank(), basis.dim())
}

fn main() {
    use Constraint::*;
    use InputReduction::*;
    let s11_01 = TensorSignature::new(1, 0, 1);
    let s11_11 = TensorSignature::new(1, 1, 1);
    let s11_02 = TensorSignature::new(1, 0, 2);
    let s12_01 = TensorSignature::new(2, 0, 1);
    println!("closed 1-form psi: {:?} (want dim 3)", run(s11_01, &[Input(PsiClosed1Form)]));
    println!("closed 1-form + alt output: {:?} (want dim 2)", run(s11_01, &[Input(PsiClosed1Form), AltOutput]));
    println!("(1,1)x(1,1) alt output: {:?} (want dim 8)", run(s11_11, &[AltOutput]));
    println!("(1,1)x(0,1) alt output: {:?} (want dim 4)", run(s11_01, &[AltOutput]));
    println!("sym psi (0,2): {:?}", run(s11_02, &[Input(PsiSymmetric)]));
    println!("antisym psi (0,2): {:?}", run(s11_02, &[Input(PsiAntisymmetric)]));
    println!("antisym psi + alt: {:?}", run(s11_02, &[Input(PsiAntisymmetric), AltOutput]));
    println!("closed 2-form psi: {:?}", run(s11_02, &[Input(PsiClosed2Form)]));
    println!("closed 2-form + alt: {:?}", run(s11_02, &[Input(PsiClosed2Form), AltOutput]));
    println!("antisym S (1,2): {:?} (derived fixture)", run(s12_01, &[Input(PhiAntisymmetric)]));
    println!("antisym S + alt: {:?}", run(s12_01, &[Input(PhiAntisymmetric), AltOutput]));
}
