use sl2share::exactalg::{PolyC, Rational};
use sl2share::share_space::{
    apply_op, e_at_c, e_poly, eigenvalue, gram, operator_matrix, p_norm, pairing, sigma_matrix, u_column, Basis,
    Matrix, Op, SElem,
};

fn op(o: Op, b: Basis, size: usize) -> Matrix {
    operator_matrix(o, b, size).matrix
}

fn norm_factor(n: i64) -> PolyC {
    PolyC::c_minus(Rational::new(n * n - 1, 4))
}

#[test]
fn x_minus_y_is_u_minus_c() {
    let n = 10;
    for b in Basis::ALL {
        let lhs = &op(Op::X, b, n) - &op(Op::Y, b, n);
        let rhs = &op(Op::U, b, n) - &Matrix::scalar(n, &PolyC::c());
        assert_eq!(lhs, rhs, "basis {b}");
    }
}

#[test]
fn commutators_agree() {
    let n = 10;
    for b in Basis::ALL {
        // two-factor products are exact on the leading block with one extra row
        let (u, x, y) = (op(Op::U, b, n + 1), op(Op::X, b, n + 1), op(Op::Y, b, n + 1));
        let ux = (&(&u * &x) - &(&x * &u)).truncate(n);
        let xy = (&(&x * &y) - &(&y * &x)).truncate(n);
        let uy = (&(&u * &y) - &(&y * &u)).truncate(n);
        assert_eq!(ux, xy, "basis {b}");
        assert_eq!(xy, uy, "basis {b}");
    }
}

#[test]
fn cubic_relation_for_u_and_y() {
    let n = 8;
    for b in [Basis::Y, Basis::E] {
        let s = n + 2;
        let (u, y) = (op(Op::U, b, s), op(Op::Y, b, s));
        let one = Matrix::identity(s);
        let c = Matrix::scalar(s, &PolyC::c());
        let two = PolyC::from_ints(&[2]);
        let lhs = &(&u * &y) * &y;
        let t1 = &(&(&y.scale(&two) - &one) * &u) * &y;
        let t2 = &(&(&c.scale(&two) - &y) - &(&y * &y)) * &u;
        let ymc = &y - &c;
        let rhs = &(&t1 + &t2) - &(&ymc * &ymc);
        assert_eq!(lhs.truncate(n), rhs.truncate(n), "basis {b}");
    }
}

#[test]
fn adjointness_under_gram() {
    let n = 8;
    let g = gram(n + 1);
    let (u, x, y) = (op(Op::U, Basis::Y, n + 1), op(Op::X, Basis::Y, n + 1), op(Op::Y, Basis::Y, n + 1));
    assert_eq!((&y.transpose() * &g).truncate(n), (&g * &u).truncate(n));
    assert_eq!((&x.transpose() * &g).truncate(n), (&g * &x).truncate(n));
}

#[test]
fn involution_identities() {
    let n = 10;
    for b in Basis::ALL {
        let s = sigma_matrix(b, n + 1);
        let (u, x, y) = (op(Op::U, b, n + 1), op(Op::X, b, n + 1), op(Op::Y, b, n + 1));
        assert_eq!((&s * &s).truncate(n), Matrix::identity(n), "basis {b}");
        assert_eq!((&s * &u).truncate(n), (&u * &s).truncate(n), "basis {b}");
        let minus_one = PolyC::from_ints(&[-1]);
        assert_eq!((&s * &x).truncate(n), (&y * &s).scale(&minus_one).truncate(n), "basis {b}");
    }
    let e = sigma_matrix(Basis::E, n);
    for m in 0..n {
        assert_eq!(e.get(m, m), &PolyC::from_ints(&[if m % 2 == 0 { 1 } else { -1 }]));
    }
}

#[test]
fn transitions_are_unitriangular_and_u_flips_signs() {
    let n = 9;
    let u_x = op(Op::U, Basis::X, n);
    for m in 0..n {
        let ym = SElem::basis_element(Basis::Y, m).to_basis(Basis::X);
        assert_eq!(ym.degree(), Some(m));
        assert_eq!(ym.coeff(m), PolyC::one());
        let col = u_column(m);
        for (i, u) in col.iter().enumerate() {
            let want = if (i + m) % 2 == 0 { u.clone() } else { -u };
            assert_eq!(u_x.get(i, m), &want, "u bar ({i}, {m})");
        }
    }
}

#[test]
fn e_basis_three_term_forms() {
    for n in 1..8i64 {
        let k = n as usize;
        let e = |i| SElem::basis_element(Basis::E, i);
        let diag = PolyC::constant(Rational::new(n * (n + 1), 4));
        let f = norm_factor(n);
        let sub = (&f * &f).scale(&Rational::new(n * n, 4 * n * n - 1));
        let xe = &(&e(k + 1) - &e(k).scale(&diag)) + &e(k - 1).scale(&sub);
        let ye = &(&e(k + 1) + &e(k).scale(&diag)) + &e(k - 1).scale(&sub);
        assert_eq!(apply_op(Op::X, &e(k)), xe, "X e_{n}");
        assert_eq!(apply_op(Op::Y, &e(k)), ye, "Y e_{n}");
        assert_eq!(apply_op(Op::U, &e(k)), e(k).scale(&eigenvalue(k)), "U e_{n}");
    }
}

#[test]
fn norms_and_eigenvalues_at_c() {
    let p = |n| SElem::basis_element(Basis::P, n);
    for n in 0..=8usize {
        let prod = (1..=n as i64).fold(PolyC::one(), |acc, m| &acc * &norm_factor(m));
        let fact: i64 = (1..=n as i64).product();
        let sign = if n % 2 == 0 { 1 } else { -1 };
        assert_eq!(p_norm(n), prod.scale(&Rational::from(sign * fact * fact)), "p_{n}");
        let double_fact: i64 = (1..=n as i64).map(|m| 2 * m - 1).product();
        assert_eq!(e_at_c(n), prod.scale(&Rational::new(fact, double_fact)), "e_{n}(c)");
        for m in 0..n {
            assert!(pairing(&p(n), &p(m)).is_zero());
        }
    }
}

#[test]
fn pairing_with_eigenvectors() {
    for n in 0..6 {
        for k in 0..6u32 {
            let yk = SElem::basis_element(Basis::Y, k as usize);
            assert_eq!(pairing(&yk, &e_poly(n)), &e_at_c(n) * &eigenvalue(n).pow(k));
        }
    }
}

#[test]
fn pairing_is_symmetric() {
    let a = SElem::parse("y^3 - c y + 2", Basis::Y).unwrap();
    let b = SElem::parse("p_2 + c p_1", Basis::P).unwrap();
    assert_eq!(pairing(&a, &b), pairing(&b, &a));
}
