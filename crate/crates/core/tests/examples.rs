// Every example under examples/ must run to completion.

macro_rules! example {
    ($name:ident) => {
        #[allow(dead_code)]
        mod $name {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", stringify!($name), ".rs"));
        }

        #[test]
        fn $name() {
            $name::run().unwrap();
        }
    };
}

example!(binary_forms);
example!(lattice_invariants);
example!(discriminant_forms);
example!(overlattices);
example!(weierstrass_fibers);
example!(ample_cone);
example!(fibrations);
example!(trilinear_polarization);
