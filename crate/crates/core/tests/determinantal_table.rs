use generica_core::determinantal::{det_ideal, det_profile, expected_height, generic_matrix, MatrixKind, MatrixShape};
use generica_core::ideal_theory::height;

fn check(shape: MatrixShape) {
    let (r, phi) = generic_matrix(&shape).unwrap();
    let profile = det_profile(&r, &phi, shape.kind, false, None).unwrap();
    for row in &profile.rows {
        let expected = expected_height(&shape, row.j).unwrap();
        assert_eq!(row.height, Some(expected), "{:?} j = {}", shape, row.j);
        assert!(row.matches);
    }
}

#[test]
fn generic_heights() {
    for m in 1..=4 {
        for n in m..=4 {
            check(MatrixShape::generic(m, n));
        }
    }
}

#[test]
fn symmetric_heights() {
    for m in 1..=4 {
        check(MatrixShape::symmetric(m));
    }
}

#[test]
fn skew_heights() {
    // odd-size minors of a skew matrix share the radical of the Pfaffians
    for m in 2..=4 {
        let shape = MatrixShape::skew(m);
        let (r, phi) = generic_matrix(&shape).unwrap();
        for j in 0..m {
            let i = det_ideal(&r, &phi, j + 1, None).unwrap();
            let expected = expected_height(&shape, j).unwrap();
            if i.is_zero() {
                assert_eq!(expected, 0, "{shape:?} j = {j}");
            } else {
                assert_eq!(height(&i).unwrap().height, expected, "{shape:?} j = {j}");
            }
        }
    }
}

#[test]
fn grades_agree_with_heights_on_generic_shapes() {
    let shape = MatrixShape::generic(2, 3);
    let (r, phi) = generic_matrix(&shape).unwrap();
    let p = det_profile(&r, &phi, MatrixKind::Generic, true, None).unwrap();
    for row in p.rows {
        assert_eq!(row.grade.unwrap().finite(), row.height);
    }
}
