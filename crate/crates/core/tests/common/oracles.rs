// Generated by tools/gen_oracles.py (mpmath, 50 digits). Do not edit by hand.
#![allow(dead_code)]

/// (z, Γ(z))
pub const GAMMA: &[((f64, f64), (f64, f64))] = &[
    ((0.5, 3.0), (0.021445670552430646, 0.006865364837261678)),
    ((-2.5, 0.25), (-0.6937452926286596, -0.19654120922144352)),
    ((10.3, -7.1), (-33412.46849728329, 57069.07380710506)),
    ((-14.2, 20.0), (9.98366323910922e-34, -9.099895159389925e-34)),
    ((0.1, 45.0), (1.0947824051721628e-31, 7.592974630746399e-34)),
    ((33.0, 12.0), (-1.1004785763969478e+34, -2.803792000320431e+34)),
    ((-0.5, 0.0), (-3.544907701811032, 0.0)),
    ((0.001, 0.001), (499.4237733891342, -499.9990127569994)),
    ((-30.7, 0.5), (-1.8761605806916827e-34, -4.002565578701901e-34)),
    ((2.25, 0.0), (1.1330030963193463, 0.0)),
];

/// (a, b, c, u, F(a,b;c;u))
pub const HYP2F1: &[((f64, f64), (f64, f64), (f64, f64), f64, (f64, f64))] = &[
    ((1.0, 0.0), (1.0, 0.0), (2.0, 0.0), 0.5, (1.3862943611198906, 0.0)),
    ((0.5, 2.0), (0.5, 2.0), (1.0, 4.0), 0.9, (-0.23522134858297078, 1.7283640417629562)),
    ((0.5, 2.0), (0.5, 2.0), (1.0, 4.0), 0.999, (-4.133082183409331, 1.1304619691939817)),
    ((0.3, 0.2), (1.1, -0.4), (2.7, 0.1), 0.95, (1.2734806349973733, 0.03493240287170641)),
    ((1.5, 0.5), (0.25, 0.0), (2.75, 0.5), 0.99, (1.321018325805635, 0.06966801287128707)),
    ((1.5, 0.5), (0.25, 0.0), (3.75, 0.5), 0.97, (1.1657071786665687, 0.04220811829357846)),
    ((1.5, 0.5), (0.25, 0.0), (0.75, 0.5), 0.9, (3.916113571710489, -1.2686345074872039)),
    ((1.0, 0.7), (0.5, 0.7), (1.5, 1.4), 0.98, (1.81651919349375, 2.2950927450644403)),
    ((-3.0, 0.0), (2.5, 1.0), (1.5, 0.0), 0.9999, (-8.00039978e-05, 0.1524152066693143)),
    ((4.0, -3.0), (-2.5, 1.0), (7.5, 2.0), 0.3, (0.7729587785494877, 0.4470512026343567)),
];

/// Background H^2 scattering modes S_k(ζ) for k = 0..=16, ζ = (0.5+1j)
pub const MODES_H2_ONE: [(f64, f64); 17] = [
    (0.901071007703453, 0.43367157974241716),
    (-0.8875798684160056, 0.46065385831731215),
    (-0.7665958186067517, -0.6421299330311928),
    (-0.11227288034889421, -0.9936774126134512),
    (0.4296356214618187, -0.9030023437240442),
    (0.7716473791367722, -0.6360505658132461),
    (0.9461517460382813, -0.32372345214505466),
    (0.9997032231668166, -0.024361149190424175),
    (0.971161926948873, 0.2384208708250011),
    (0.8893123889567534, 0.457300202108016),
    (0.7746019383489089, 0.6324490786665067),
    (0.6412928639336778, 0.7672962026934197),
    (0.4992260842727696, 0.8664717634070238),
    (0.35512276946373217, 0.934819671705944),
    (0.21351089129190162, 0.9769406836137687),
    (0.07737691918594614, 0.9970019119225858),
    (-0.051376710277150454, 0.9986793447554113),
];

/// Background H^2 scattering modes S_k(ζ) for k = 0..=16, ζ = (0.5+2j)
pub const MODES_H2_TWO: [(f64, f64); 17] = [
    (0.4754132152045738, -0.8797626241258772),
    (-0.005476307944799374, 0.9999850049132205),
    (-0.9584522384921479, -0.28525305700270914),
    (0.06790371057753744, -0.9976918793343975),
    (0.8940241183351538, -0.44801883424143113),
    (0.931638389249155, 0.3633867246849284),
    (0.48061313210866846, 0.8769327324514097),
    (-0.09549835114767743, 0.9954295881317146),
    (-0.5784676596085906, 0.8157053185967098),
    (-0.8815003095157303, 0.4721834435086342),
    (-0.9970543506531548, 0.0766982518941321),
    (-0.955434147365, -0.295204319156945),
    (-0.7996699502263617, -0.6004398143902253),
    (-0.5724041135878458, -0.8199716646004985),
    (-0.3100808770931898, -0.9507101817384297),
    (-0.041134144035666176, -0.9991536329286168),
    (0.21383657610296053, -0.9768694481457401),
];

/// Expansion coefficients (f, f') of the k = 0 regular solution, ζ = 0.5+1i, x = 2e^{-r}
pub const EXPANSION_K0_ONE: ((f64, f64), (f64, f64)) = ((0.3896774354129613, -0.08889306518311473), (0.3896774354129613, 0.08889306518311473));

/// Closed-form H^2 regular solution, k = 1, ζ = 0.5+1i: (r, u, du/dr)
pub const REGULAR_K1_ONE: &[(f64, (f64, f64), (f64, f64))] = &[
    (0.5, (0.47095138280064275, 5.1309496234296165e-52), (0.829218259117689, 7.736141061421204e-61)),
    (2.0, (0.7560039331184244, -1.295008334855621e-51), (-0.38965024850664715, -1.687384170450875e-61)),
    (5.0, (-0.1637191819265996, 7.703085504663278e-51), (0.054417935838100964, 3.096717866663934e-60)),
    (9.0, (0.017294386560639644, 3.5043678135697486e-50), (-0.022986038036874462, -1.5019459125899237e-59)),
];

/// Ŵ_x(ξ) for n = 1, ζ = 0.5+2i, ξ = 1 via the Bessel-K closed form: (x, value)
pub const W_HAT_N1: &[(f64, (f64, f64))] = &[
    (0.01, (-0.1694250341391045, 0.1722814993073601)),
    (0.005, (-0.05448154302960341, 0.05540008869062482)),
    (0.0025, (0.07057676819012187, -0.07176667546119025)),
    (0.001, (0.020435458665975466, -0.0207799955649839)),
    (0.0001, (0.01555927388789604, -0.015821599488890947)),
    (0.3, (-0.6878083445149134, 0.6994046271335096)),
];

/// G_ζ(d) for n = 1, ζ = 0.5+2i: (d, value)
pub const GREEN_N1: &[(f64, (f64, f64))] = &[
    (1e-06, (2.1086844851000532, -0.24999825633463704)),
    (0.05, (0.38524784237878745, -0.249334708412266)),
    (0.7, (-0.07940578611430062, -0.13799019893874837)),
    (3.0, (0.04033725783795965, -0.018928421664355877)),
    (20.0, (-8.992412929180296e-06, -1.0708102469941703e-06)),
];

/// Closed-form H^2 Jost germs at r = 12, ζ = 0.5+1i: (k, u_(1-ζ), u_(1-ζ)', u_ζ, u_ζ')
pub const JOST_R12_ONE: &[(i64, (f64, f64), (f64, f64), (f64, f64), (f64, f64))] = &[
    (0, (0.0010736458218092496, -0.00333702103024777), (0.002800198119344241, 0.00274215633703775), (0.0010736458218092496, 0.00333702103024777), (0.002800198119344241, -0.00274215633703775)),
    (1, (0.0010736458218925037, -0.0033370210302904927), (0.002800198119178828, 0.0027421563372278116), (0.0010736458218925037, 0.0033370210302904927), (0.002800198119178828, -0.0027421563372278116)),
    (5, (0.0010736458238906072, -0.0033370210313158383), (0.002800198115208915, 0.0027421563417892787), (0.0010736458238906072, 0.0033370210313158383), (0.002800198115208915, -0.0027421563417892787)),
];
