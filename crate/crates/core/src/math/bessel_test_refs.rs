// Reference values evaluated with 40-digit arithmetic at the exact f64
// arguments; regenerate with any arbitrary-precision library if extended.

/// (nu, x, J_nu(x))
pub const J_REFS: &[(u32, f64, f64)] = &[
    (0, 0.001, 0.99999975000001562),
    (0, 0.03, 0.99977501265593360),
    (0, 0.1, 0.99750156206604003),
    (0, 0.5, 0.93846980724081290),
    (0, 1.0, 0.76519768655796655),
    (0, 2.0, 0.22389077914123567),
    (0, 2.404825557695773, -6.1087652597367304e-17),
    (0, 3.0, -0.26005195490193344),
    (0, 4.6, -0.29613781657414123),
    (0, 5.0, -0.17759677131433830),
    (0, 7.5, 0.26633965788037840),
    (0, 10.0, -0.24593576445134834),
    (0, 13.2, 0.21668592225856408),
    (0, 20.0, 0.16702466434058315),
    (0, 34.5, -0.090000654753103864),
    (0, 50.0, 0.055812327669251815),
    (1, 0.001, 0.00049999993750000261),
    (1, 0.03, 0.014998312563280063),
    (1, 0.1, 0.049937526036242000),
    (1, 0.5, 0.24226845767487389),
    (1, 1.0, 0.44005058574493352),
    (1, 2.0, 0.57672480775687339),
    (1, 2.404825557695773, 0.51914749728946676),
    (1, 3.0, 0.33905895852593646),
    (1, 4.6, -0.25655283609744448),
    (1, 5.0, -0.32757913759146522),
    (1, 7.5, 0.13524842757970551),
    (1, 10.0, 0.043472746168861437),
    (1, 13.2, -0.027066702764779255),
    (1, 20.0, 0.066833124175850046),
    (1, 34.5, 0.10044494700742566),
    (1, 50.0, -0.097511828125175138),
    (2, 0.001, 1.2499998958333366e-7),
    (2, 0.03, 0.00011249156273730112),
    (2, 0.1, 0.0012489586587999190),
    (2, 0.5, 0.030604023458682641),
    (2, 1.0, 0.11490348493190048),
    (2, 2.0, 0.35283402861563772),
    (2, 2.404825557695773, 0.43175480701968038),
    (2, 3.0, 0.48609126058589108),
    (2, 4.6, 0.18459310522742624),
    (2, 5.0, 0.046565116277752216),
    (2, 7.5, -0.23027341052579026),
    (2, 10.0, 0.25463031368512062),
    (2, 13.2, -0.22078693782898517),
    (2, 20.0, -0.16034135192299815),
    (2, 34.5, 0.095823550231795206),
    (2, 50.0, -0.059712800794258821),
    (3, 0.001, 2.0833332031250034e-11),
    (3, 0.03, 5.6246836008690510e-7),
    (3, 0.1, 2.0820315754756265e-5),
    (3, 0.5, 0.0025637299945872441),
    (3, 1.0, 0.019563353982668406),
    (3, 2.0, 0.12894324947440205),
    (3, 2.404825557695773, 0.19899990535769083),
    (3, 3.0, 0.30906272225525164),
    (3, 4.6, 0.41706857977346730),
    (3, 5.0, 0.36483123061366699),
    (3, 7.5, -0.25806091319346031),
    (3, 10.0, 0.058379379305186812),
    (3, 13.2, -0.039838429910670802),
    (3, 20.0, -0.098901394560449676),
    (3, 34.5, -0.089334970168956651),
    (3, 50.0, 0.092734804061634432),
    (5, 0.001, 2.6041665581597244e-19),
    (5, 0.03, 6.3278876991262884e-12),
    (5, 0.1, 2.6030817909644416e-9),
    (5, 0.5, 8.0536272413574741e-6),
    (5, 1.0, 0.00024975773021123443),
    (5, 2.0, 0.0070396297558716855),
    (5, 2.404825557695773, 0.016389243204805852),
    (5, 3.0, 0.043028434877047584),
    (5, 4.6, 0.20799122914700281),
    (5, 5.0, 0.26114054612017009),
    (5, 7.5, 0.28347390516255046),
    (5, 10.0, -0.23406152818679364),
    (5, 13.2, 0.16267392118149631),
    (5, 20.0, 0.15116976798239497),
    (5, 34.5, 0.063512345987410424),
    (5, 50.0, -0.081400247696569640),
    (8, 0.001, 9.6881197705680991e-32),
    (8, 0.03, 6.3562166504344799e-20),
    (8, 0.1, 9.6854292315946505e-16),
    (8, 0.5, 3.7582231547976100e-10),
    (8, 1.0, 9.4223441726045005e-8),
    (8, 2.0, 2.2179552287925904e-5),
    (8, 2.404825557695773, 9.2165786705344919e-5),
    (8, 3.0, 0.00049344177620883479),
    (8, 4.6, 0.010591095408414358),
    (8, 5.0, 0.018405216654802001),
    (8, 7.5, 0.17440789049583129),
    (8, 10.0, 0.31785412684385723),
    (8, 13.2, -0.16968796147415004),
    (8, 20.0, -0.073868928840750341),
    (8, 34.5, -0.13722602448011905),
    (8, 50.0, 0.10405856317363927),
];

/// (nu, x, K_nu(x))
pub const K_REFS: &[(u32, f64, f64)] = &[
    (0, 0.001, 7.0236888005623813),
    (0, 0.03, 3.6235295379295472),
    (0, 0.1, 2.4270690247020166),
    (0, 0.5, 0.92441907122766586),
    (0, 1.0, 0.42102443824070833),
    (0, 2.0, 0.11389387274953344),
    (0, 2.404825557695773, 0.069814543558869268),
    (0, 3.0, 0.034739504386279248),
    (0, 4.6, 0.0057304229172928371),
    (0, 5.0, 0.0036910983340425943),
    (0, 7.5, 0.00024917761635611439),
    (0, 10.0, 1.7780062316167652e-5),
    (0, 13.2, 6.3258359450609714e-7),
    (0, 20.0, 5.7412378153365243e-10),
    (0, 34.5, 2.2102397246743713e-16),
    (0, 50.0, 3.4101677497894955e-23),
    (1, 0.001, 999.99623815608555),
    (1, 0.03, 33.271487769478063),
    (1, 0.1, 9.8538447808706056),
    (1, 0.5, 1.6564411200033009),
    (1, 1.0, 0.60190723019723457),
    (1, 2.0, 0.13986588181652243),
    (1, 2.404825557695773, 0.083219309602173909),
    (1, 3.0, 0.040156431128194184),
    (1, 4.6, 0.0063250436442640175),
    (1, 5.0, 0.0040446134454521642),
    (1, 7.5, 0.00026529739012528953),
    (1, 10.0, 1.8648773453825585e-5),
    (1, 13.2, 6.5612212749546705e-7),
    (1, 20.0, 5.8830579695570382e-10),
    (1, 34.5, 2.2420465056676352e-16),
    (1, 50.0, 3.4441022267175556e-23),
    (2, 0.001, 1999999.5000009716),
    (2, 0.03, 2221.7227141698005),
    (2, 0.1, 199.50396464211412),
    (2, 0.5, 7.5501835512408694),
    (2, 1.0, 1.6248388986351775),
    (2, 2.0, 0.25375975456605586),
    (2, 2.404825557695773, 0.13902481067022848),
    (2, 3.0, 0.061510458471742038),
    (2, 4.6, 0.0084804418930598015),
    (2, 5.0, 0.0053089437122234600),
    (2, 7.5, 0.00031992358705619160),
    (2, 10.0, 2.1509817006932769e-5),
    (2, 13.2, 7.3199603806601639e-7),
    (2, 20.0, 6.3295436122922281e-10),
    (2, 34.5, 2.3402134351478574e-16),
    (2, 50.0, 3.5479318388581977e-23),
    (3, 0.001, 7999999000.0001245),
    (3, 0.03, 296262.96671040956),
    (3, 0.1, 7990.0124304654348),
    (3, 0.5, 62.057909529930256),
    (3, 1.0, 7.1012628247379445),
    (3, 2.0, 0.64738539094863415),
    (3, 2.404825557695773, 0.31446237873095947),
    (3, 3.0, 0.12217037575718357),
    (3, 4.6, 0.013699340942576889),
    (3, 5.0, 0.0082917684152309322),
    (3, 7.5, 0.00043592330322192504),
    (3, 10.0, 2.7252700256598692e-5),
    (3, 13.2, 8.7793910872759325e-7),
    (3, 20.0, 7.1489666920154838e-10),
    (3, 34.5, 2.5133755995978215e-16),
    (3, 50.0, 3.7279367738262114e-23),
    (5, 0.001, 3.8399997600000096e+17),
    (5, 0.03, 15801580280.245667),
    (5, 0.1, 38376009.995835918),
    (5, 0.5, 12097.979476096393),
    (5, 1.0, 360.96058960124070),
    (5, 2.0, 9.4310491005964674),
    (5, 2.404825557695773, 3.3869621454271543),
    (5, 3.0, 0.93777360238680803),
    (5, 4.6, 0.059523945238809946),
    (5, 5.0, 0.032706273712031858),
    (5, 7.5, 0.0011491630148312388),
    (5, 10.0, 5.7541849985312279e-5),
    (5, 13.2, 1.5634295749735518e-6),
    (5, 20.0, 1.0538660139974233e-9),
    (5, 34.5, 3.1573923497608159e-16),
    (5, 50.0, 4.3671822541009863e-23),
    (8, 0.001, 6.4511997696000037e+29),
    (8, 0.03, 9.8323314188202158e+17),
    (8, 0.1, 64488964799200.096),
    (8, 0.5, 163683808.12448186),
    (8, 1.0, 622552.12295866777),
    (8, 2.0, 2188.1172852111300),
    (8, 2.404825557695773, 470.69281187667508),
    (8, 3.0, 71.867620097333778),
    (8, 4.6, 1.5734795978314758),
    (8, 5.0, 0.71436242056452555),
    (8, 7.5, 0.010919277564216618),
    (8, 10.0, 0.00033623939953126462),
    (8, 13.2, 6.2062107414174348e-6),
    (8, 20.0, 2.6892922537617229e-9),
    (8, 34.5, 5.4949549011023382e-16),
    (8, 50.0, 6.4187097648963393e-23),
];

/// (nu, x, J_nu'(x))
pub const JP_REFS: &[(u32, f64, f64)] = &[
    (0, 0.1, -0.049937526036242000),
    (0, 1.0, -0.44005058574493352),
    (0, 2.404825557695773, -0.51914749728946676),
    (0, 5.0, 0.32757913759146522),
    (0, 13.2, 0.027066702764779255),
    (0, 50.0, 0.097511828125175138),
    (1, 0.1, 0.49812630170362006),
    (1, 1.0, 0.32514710081303304),
    (1, 2.404825557695773, -0.21587740350984022),
    (1, 5.0, -0.11208094379604526),
    (1, 13.2, 0.21873643004377463),
    (1, 50.0, 0.057762564231755318),
    (2, 0.1, 0.024958352860243622),
    (2, 1.0, 0.21024361588113256),
    (2, 2.404825557695773, 0.16007379596588797),
    (2, 5.0, -0.34620518410256611),
    (2, 13.2, 0.0063858635729457737),
    (2, 50.0, -0.095123316093404785),
    (5, 0.1, 1.3013239590861831e-7),
    (5, 1.0, 0.0012278503130537829),
    (5, 2.404825557695773, 0.030670923846075069),
    (5, 5.0, 0.13009181433847809),
    (5, 13.2, 0.14105965105841651),
    (5, 50.0, 0.078981002051311916),
];

/// (nu, x, K_nu'(x))
pub const KP_REFS: &[(u32, f64, f64)] = &[
    (0, 0.1, -9.8538447808706056),
    (0, 1.0, -0.60190723019723457),
    (0, 2.404825557695773, -0.083219309602173909),
    (0, 5.0, -0.0040446134454521642),
    (0, 13.2, -6.5612212749546705e-7),
    (0, 50.0, -3.4441022267175556e-23),
    (1, 0.1, -100.96551683340807),
    (1, 1.0, -1.0229316684379429),
    (1, 2.404825557695773, -0.10441967711454887),
    (1, 5.0, -0.0045000210231330271),
    (1, 13.2, -6.8228981628605676e-7),
    (1, 50.0, -3.4790497943238466e-23),
    (2, 0.1, -3999.9331376231527),
    (2, 1.0, -3.8515850274675895),
    (2, 2.404825557695773, -0.19884084416656669),
    (2, 5.0, -0.0061681909303415482),
    (2, 13.2, -7.6703061811153015e-7),
    (2, 50.0, -3.5860195002718835e-23),
    (5, 0.1, -1919280100.0415883),
    (5, 1.0, -1849.0353638532663),
    (5, 2.404825557695773, -7.9656153670163489),
    (5, 5.0, -0.047965339522532436),
    (5, 13.2, -1.7232674416442981e-6),
    (5, 50.0, -4.4320024771274417e-23),
];
