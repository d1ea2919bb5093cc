//! Closed-form reference constants: sphere volumes, the sharp Sobolev
//! constant, and the Beta-type integrals with their recurrences.

use yamabe_radial::special;

fn main() {
    println!("unit-sphere volumes omega_n = 2 pi^((n+1)/2) / Gamma((n+1)/2):");
    for n in 1..=6 {
        println!("  omega_{n} = {:.12}", special::sphere_volume(n).unwrap());
    }

    println!("\nsharp Sobolev constant K0 = 4/(n(n-2) omega_n^(2/n)):");
    for n in 3..=8 {
        println!(
            "  K0({n}) = {:.12}   (2# = {:.6})",
            special::best_sobolev_constant(n).unwrap(),
            special::critical_exponent(n)
        );
    }

    println!("\nintegrals I_p^q = Gamma(q+1) Gamma(p-q-1) / Gamma(p):");
    for (p, q) in [(6.0, 3.0), (7.0, 3.0), (4.0, 2.0), (5.0, 2.5), (5.0, 1.5)] {
        println!("  I_{p}^{q} = {:.12}", special::aubin(p, q).unwrap());
    }

    println!("\nshift identities (relative discrepancies):");
    for (p, q) in [(6.0, 3.0), (5.5, 2.25), (9.0, 3.5)] {
        let r = special::check_shift_recurrences(p, q).unwrap();
        println!("  p={p}, q={q}: {:.3e}, {:.3e}", r.shift_p, r.shift_pq);
    }

    // the convergence boundary p - q - 1 = 0 is rejected
    let err = special::aubin(3.0, 2.0).unwrap_err();
    println!("\nI_3^2 is divergent: {err}");
}
