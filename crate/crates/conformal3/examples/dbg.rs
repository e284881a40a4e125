fn main() {
    use nalgebra::{DMatrix, dvector};
    let e1 = dvector![1.0, 0.0, 0.0];
    let e2 = dvector![0.0, 1.0, 0.0];
    let mixed = dvector![1.0, 1.0, 0.0];
    let a = conformal3::linalg::columns_matrix(&[e1.clone(), e2.clone()]);
    let svd = a.clone().svd(true, false);
    println!("singular: {:?}", svd.singular_values.as_slice());
    let u = svd.u.unwrap();
    println!("u = {}", u);
    let (qa, ra) = conformal3::linalg::orthonormal_span(&[e1.clone(), e2.clone()], 1e-9);
    let (qb, rb) = conformal3::linalg::orthonormal_span(&[mixed, e2], 1e-9);
    println!("ra={} rb={}", ra, rb);
    println!("qa = {}", qa);
    println!("qb = {}", qb);
    let cross = qa.transpose() * &qb;
    let s2 = cross.svd(false, false);
    println!("cross singulars: {:?}", s2.singular_values.as_slice());
    let _ = DMatrix::<f64>::zeros(1,1);
}
