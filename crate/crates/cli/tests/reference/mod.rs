//! Published reference values shared by the integration tests.
#![allow(dead_code)]

use tree_asymptotics::Variety;

pub const RHO_POLYA: &str = "0.33832185689920769519611262571701705318377460753297";
pub const RHO_IDENTITY: &str = "0.39721309688424004148565407022739873422987370995276";
pub const RHO_HIERARCHY: &str = "0.28083266698420035539318755911632333333736599643391";

pub fn rho_reference(v: Variety) -> &'static str {
    match v {
        Variety::Polya => RHO_POLYA,
        Variety::Identity => RHO_IDENTITY,
        Variety::Hierarchy => RHO_HIERARCHY,
    }
}

/// `t_0..=t_18`, columns Pólya, identity, hierarchy.
pub const PUISEUX: [[&str; 3]; 19] = [
    ["1.000000000000000000", "1.000000000000000000", "0.6404163334921001777"],
    ["-1.559490020374640884", "-1.285158159488538943", "-0.7316031724762238750"],
    ["0.8106697078826992796", "0.5505438316333229659", "0.03799806716699161541"],
    ["-0.2854870216128456058", "-0.5681159369076463432", "0.1384103018915147449"],
    ["0.1653723657120838943", "0.4261261857916583247", "-0.07387395031732463851"],
    ["-0.3424599704021542007", "-0.1312888430707878210", "-0.05428300802019698042"],
    ["0.3174072259465285628", "0.1224152517144394163", "0.03800381072191918081"],
    ["-0.1077788002916310083", "-0.3225499663026797778", "0.03109684705422999274"],
    ["0.06138495705583510410", "0.2539454170234272677", "-0.02381831461193008886"],
    ["-0.1952123835975564636", "0.04875363678533678081", "-0.02078556533052714092"],
    ["0.2059848312779074186", "-0.00002800001023286558041", "0.01666265537126027377"],
    ["-0.05272470849819056138", "-0.3631594631270670335", "0.01611178365047090583"],
    ["0.01702656875495366861", "0.2637344037695510765", "-0.01295368177079785790"],
    ["-0.1523706243663253961", "0.2617035123807709629", "-0.01338408339711046374"],
    ["0.1737028832998504627", "-0.1368754575043169801", "0.01075691931570711729"],
    ["-0.01447370373952704466", "-0.5927534134371262366", "0.01183388780152404393"],
    ["-0.02189951761121556237", "0.3911340105112945142", "-0.009441457380326882677"],
    ["-0.1445471935709097045", "0.6832510269350502136", "-0.01084956346194149131"],
    ["0.1760771088850177779", "-0.3902593892984113718", "0.008607637481105329431"],
];

/// `tau_0..=tau_18`, columns Pólya, identity, hierarchy.
pub const TAU: [[&str; 3]; 19] = [
    ["0.7797450101873204419", "0.6425790797442694714", "0.3658015862381119375"],
    ["0.07828911261061096133", "-0.1851197977766337056", "0.2409833212579280352"],
    ["0.3929402676631860168", "-0.4272427290060978745", "0.3678657493849431861"],
    ["1.537879315978838092", "-2.255455568987212079", "0.9991064877914853523"],
    ["8.200844090435596194", "-16.60970953335647846", "4.137777553476907813"],
    ["57.29291473494343825", "-157.9003693373302727", "23.43410248921570084"],
    ["503.0445050262735854", "-1840.110517359351172", "170.1188811511555370"],
    ["5359.600933884326064", "-25387.34869954017854", "1514.745295656330186"],
    ["67342.06920114653067", "-404610.0663959841556", "16007.82637588106931"],
    ["975425.4970695924728", "-7.313377058487246593e6", "195812.3506172274875"],
    ["1.599693249293173348e7", "-1.477949138517813328e8", "2.719234685827618831e6"],
    ["2.928225313353392698e8", "-3.301794456762036735e9", "4.222444465223140109e7"],
    ["5.914523441293936053e9", "-8.080229604228356791e10", "7.243861962702191648e8"],
    ["1.305991927898973201e11", "-2.149826267241085239e12", "1.359774926415692519e10"],
    ["3.128498399789526502e12", "-6.179075814699061934e13", "2.770908644498957323e11"],
    ["8.078305401468914384e13", "-1.908151484770832703e15", "6.089496262810801422e12"],
    ["2.236301680891647428e15", "-6.301063280436556255e16", "1.435269254893331074e14"],
    ["6.605960869699262787e16", "-2.215767775919040241e18", "3.610881990157578400e15"],
    ["2.073828085209932615e18", "-8.267080545525264413e19", "9.656755540184967275e16"],
];

pub fn column(v: Variety) -> usize {
    match v {
        Variety::Polya => 0,
        Variety::Identity => 1,
        Variety::Hierarchy => 2,
    }
}

/// Relative errors for hierarchies at sizes {10, 20, 50, 100, 200, 500},
/// rows for orders 1, 4, 8.
pub const ERROR_SIZES: [usize; 6] = [10, 20, 50, 100, 200, 500];
pub const ERROR_ORDERS: [usize; 3] = [1, 4, 8];
pub const ERRORS: [[f64; 6]; 3] = [
    [1.391e-2, 2.859e-3, 4.204e-4, 1.027e-4, 2.540e-5, 4.039e-6],
    [1.039e-3, 3.448e-5, 2.383e-7, 6.872e-9, 2.071e-10, 2.078e-12],
    [7.722e-4, 3.369e-6, 3.822e-10, 6.195e-13, 1.123e-15, 2.611e-18],
];
