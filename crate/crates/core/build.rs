fn main() {
    // OpenBLAS bundles BLAS and LAPACK; the dense eigensolvers and Cholesky
    // factorizations go through it.
    println!("cargo:rustc-link-lib=dylib=openblas");
    println!("cargo:rerun-if-changed=build.rs");
}
