// Generated by tests/oracles/generate_reference_values.py -- do not edit.
// Frozen reference values: mpmath (50-digit) normal tail tables, scipy
// quadrature evidences for the pinned synthetic datasets, statsmodels
// probit fits, numpy summary statistics.
#pragma once

#include <cstddef>

namespace refvals {

inline constexpr double cdf_at_1959964 = 0.9750000009035575956975;
inline constexpr double logcdf_at_m10 = -53.23128515051247057835;
inline constexpr double logcdf_at_p5 = -2.866516129637635933846e-7;
inline constexpr double half_normal_mean = 0.7978845608028653558799;
inline constexpr double trunc_mean_mu_m8 = 0.1213681122361126806535;

inline constexpr double logcdf_tail_x[] = {
    -5.00000, -5.25000, -5.50000, -5.75000, -6.00000, -6.25000, -6.50000, -6.75000,
    -7.00000, -7.25000, -7.50000, -7.75000, -8.00000, -8.25000, -8.50000, -8.75000,
    -9.00000, -9.25000, -9.50000, -9.75000, -10.0000, -10.2500, -10.5000, -10.7500,
    -11.0000, -11.2500, -11.5000, -11.7500, -12.0000, -12.2500, -12.5000, -12.7500,
    -13.0000, -13.2500, -13.5000, -13.7500, -14.0000, -14.2500, -14.5000, -14.7500,
    -15.0000, -15.2500, -15.5000, -15.7500, -16.0000, -16.2500, -16.5000, -16.7500,
    -17.0000, -17.2500, -17.5000, -17.7500, -18.0000, -18.2500, -18.5000, -18.7500,
    -19.0000, -19.2500, -19.5000, -19.7500, -20.0000, -20.2500, -20.5000, -20.7500,
    -21.0000, -21.2500, -21.5000, -21.7500, -22.0000, -22.2500, -22.5000, -22.7500,
    -23.0000, -23.2500, -23.5000, -23.7500, -24.0000, -24.2500, -24.5000, -24.7500,
    -25.0000, -25.2500, -25.5000, -25.7500, -26.0000, -26.2500, -26.5000, -26.7500,
    -27.0000, -27.2500, -27.5000, -27.7500, -28.0000, -28.2500, -28.5000, -28.7500,
    -29.0000, -29.2500, -29.5000, -29.7500, -30.0000, -30.2500, -30.5000, -30.7500,
    -31.0000, -31.2500, -31.5000, -31.7500, -32.0000, -32.2500, -32.5000, -32.7500,
    -33.0000, -33.2500, -33.5000, -33.7500, -34.0000, -34.2500, -34.5000, -34.7500,
    -35.0000, -35.2500, -35.5000, -35.7500, -36.0000, -36.2500, -36.5000, -36.7500,
    -37.0000, -37.2500, -37.5000, -37.7500, -38.0000, -38.2500, -38.5000, -38.7500,
    -39.0000, -39.2500, -39.5000, -39.7500, -40.0000,
};
inline constexpr double logcdf_tail_val[] = {
    -15.06499839398872573608, -16.39188001003779318938, -17.77937635262526051059,
    -19.22763009222045576472, -20.73676894997470565497, -22.30690763600825068167,
    -23.93814949516183855429, -25.63058790962985290698, -27.38430749881107524263,
    -29.19938514940534860705, -31.07589090289000124258, -33.01388872274308717816,
    -35.01343715991454989550, -37.07458993190153291864, -39.19739642821766928851,
    -41.38190215294509152466, -43.62814911333211549679, -45.93617616197736205845,
    -48.30601929896523028196, -50.73771193934228503620, -53.23128515051247057835,
    -55.78676786345148639911, -58.40418706107324341575, -61.08356794660468890844,
    -63.82493409442371550198, -66.62830758547553668560, -69.49370912909534626284,
    -72.42115817282069866963, -75.41067300156879593884, -78.46227082737592864331,
    -81.57596787074388321739, -84.75177943450720901757, -87.98971997102251966618,
    -91.28980314338372009003, -94.65204188128289197671, -98.07644843206359873523,
    -101.5630344074499582441, -105.1118108263796058336, -108.7227881543204723345,
    -112.3959763394091515259, -116.1313848457116952359, -119.9290226838752443541,
    -123.7888984394103761217, -127.7110202988189062098, -131.6953960737596862901,
    -135.7420332234253047755, -139.8509388752852039773, -144.0221198443352900274,
    -148.2555826509803898760, -152.5513335376636925579, -156.9093784843464177751,
    -161.3297232229312256772, -165.8123732507141800909, -170.3573338429422836027,
    -174.9646100645466122781, -179.6342067811147989992, -184.3661286691609673510,
    -189.1603802257461324538, -194.0169657774974994076, -198.9358894890709497757,
    -203.9171553710972639368, -208.9607672876492399187, -214.0667289632638001665,
    -219.2350439895503935330, -224.4657158314144713138, -229.7587478329225173901,
    -235.1141432228330203603, -240.5319051198158693912, -246.0120365373809170581,
    -251.5545403885348653290, -257.1594194901841804763, -262.8266765673004160033,
    -268.5563142568631079644, -274.3483351115942938463, -280.2027416034976850611,
    -286.1195361272145856211, -292.0987210032077881244, -298.1402984807838859293,
    -304.2442707409637111660, -310.4106398992099364651, -316.6394080080202589352,
    -322.9305770593940134685, -329.2841489871795347639, -335.7001256693090998209,
    -342.1785089299278316893, -348.7193005414225278971, -355.3225022263559904406,
    -361.9881156593120759734, -368.7161424686563525741, -375.5065842382169411093,
    -382.3594425088898328286, -389.2747187801727086877, -396.2524145116310384046,
    -403.2925311243000069571, -410.3950700020256018016, -417.5600324927479943097,
    -424.7874199097301626793, -432.0772335327345298435, -439.4294746091502277538,
    -446.8441443550734479851, -454.3212439563431971074, -461.8607745695346429827,
    -469.4627373229121143867, -477.1271333173437005291, -484.8539636271792885790,
    -492.6432293010937756685, -500.4949313628970965827, -508.4090708123126189840,
    -516.3856486257253741720, -524.4246657569015126612, -532.5261231376802999118,
    -540.6900216786398980691, -548.9163622697381142290, -557.2051457809292343029,
    -565.5563730627580037205, -573.9700449469317617681, -582.4461622468716850768,
    -590.9847257582440474538, -599.5857362594723576937, -608.2491945122311940454,
    -616.9751012619225134732, -625.7634572381351755896, -634.6142631550883850045,
    -643.5275197120597217094, -652.5032275937983968543, -661.5413874709243407859,
    -670.6420000003137013708, -679.8050658254713033455, -689.0305855768905936009,
    -698.3185598724015728635, -707.6689893175071910661, -717.0818745057086617573,
    -726.5572160188201300965, -736.0950144272731092543, -745.6952702904110813296,
    -755.3579841567746411415, -765.0831565643775444040, -774.8707880409740057910,
    -784.7208791043175772049, -794.6334302624119221221, -804.6084420137537881666,
};
inline constexpr std::size_t logcdf_tail_n = 141;

inline constexpr int s1_n = 6;
inline constexpr int s1_p = 1;
inline constexpr int s1_y[] = {0, 0, 0, 0, 0, 1};
inline constexpr double s1_x1[] = {
    -0.21120000, -0.51770000, 0.14960000, -1.7899000, 0.28450000, -0.32170000,
};

inline constexpr int s2_n = 20;
inline constexpr int s2_p = 1;
inline constexpr int s2_y[] = {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 0, 1, 1, 1, 1, 0, 1};
inline constexpr double s2_x1[] = {
    0.44240000, -0.92790000, -0.93320000, -1.4700000, -0.78770000, 0.31940000,
    0.85730000, 0.22880000, 0.034800000, -0.86740000, 0.19580000, -0.81570000,
    0.23960000, -0.20260000, 0.85600000, 0.20250000, 1.3688000, -0.40820000,
    0.75590000, 0.22520000,
};

inline constexpr int s3_n = 20;
inline constexpr int s3_p = 2;
inline constexpr int s3_y[] = {0, 0, 1, 1, 1, 1, 1, 1, 1, 1, 0, 0, 0, 0, 1, 1, 0, 1, 1, 0};
inline constexpr double s3_x1[] = {
    -0.48960000, -0.97150000, -1.1953000, -0.54850000, -1.5210000, -0.0040000000,
    0.87560000, 0.33280000, 0.93970000, 2.1853000, -0.60590000, -0.48860000,
    -1.2014000, -1.2639000, -0.21320000, 0.15310000, -0.77190000, 1.9312000,
    1.1552000, -1.1201000,
};
inline constexpr double s3_x2[] = {
    0.85460000, 0.87660000, -1.3670000, 0.092100000, -0.50420000, -0.035600000,
    0.78430000, 0.91340000, -1.1092000, -0.048900000, 0.60010000, 0.62720000,
    0.72540000, 0.37570000, -0.50150000, -0.57530000, 0.39490000, -0.99780000,
    1.0816000, 0.19020000,
};

inline constexpr double s1_log_evidence = -4.381050705708673831396;
inline constexpr double s1_posterior_mean = 0.7156317510425621586378;
inline constexpr double s1_theta_star = 0.79845600;
inline constexpr double s1_logpost_at_star = -0.6403146933334245005653;
inline constexpr double s2_log_evidence = -12.50584364491213662518;
inline constexpr double s2_log_evidence_g2n = -12.69142571569682509391;
inline constexpr double s2_posterior_mean = 0.9710838068914233733864;
inline constexpr double s2_theta_star = 1.0316790;
inline constexpr double s2_logpost_at_star = -0.1482493364291386228615;
inline constexpr double s2_mle = 1.0316791202048101;
inline constexpr double s2_mle_se = 0.48633706652971442;
inline constexpr double s3_log_evidence_m0 = -12.28220323990034756889;
inline constexpr double s3_log_evidence_m1 = -11.21472144685143490506;
inline constexpr double s3_log_evidence_col2 = -12.89176512884773551093;
inline constexpr double s3_mle_m1[] = {0.88321243621382572, -1.0556096323865323};
inline constexpr double s3_mle_se_m1[] = {0.41649030366131706, 0.52198400336482553};
inline constexpr double s3_mle_m0[] = {0.73107412081650003};

inline constexpr double summary_sample[] = {
    2.76099400, 3.12741700, 2.59963000, 2.46654500, 3.35298300, 2.91213000,
    3.57476600, 3.24988900, 2.24323300, 2.93119300, 2.65616500, 2.95500900,
    3.13574900, 3.41767300, 2.48934000, 2.58740600, 2.89191400, 2.60725200,
    2.68758700, 3.25174600, 2.39874200, 2.54344900, 4.01523300, 2.34522200,
    2.61046200, 3.08972500, 2.75723600, 3.22458000, 3.01343200, 3.42779000,
    3.00970600, 3.52828900, 3.07594600, 3.00305100, 2.92231800, 3.12426800,
    3.31942900, 3.04804800, 3.39518100, 3.32505500, 3.18750300, 3.02192900,
    2.70246600, 2.67273800, 3.40906900, 3.57603500, 2.36358800, 3.90610500,
    2.96256400, 2.81230500, 3.01359700, 2.38498600, 2.59564800, 3.28242600,
    2.92856100, 3.30687100, 3.03344700, 3.54534100, 2.60056300, 3.03534300,
    2.69609000, 2.94904000, 3.31061600, 3.40505000, 3.04866700, 3.25524000,
    2.46267700, 2.79430000, 3.40988700, 3.42074000, 2.58676400, 3.23392900,
    2.38977800, 3.57693300, 2.68599400, 2.84816400, 3.37388500, 3.28853500,
    2.68306800, 2.95518900, 3.67096700, 3.15746700, 2.44513700, 3.92967800,
    3.23222400, 2.76827100, 2.14923000, 2.54207400, 2.66815100, 2.95912300,
    2.56621600, 3.02854200, 3.00194700, 4.09783200, 3.54941200, 3.08093900,
    2.79047100, 2.09846300, 2.22911600, 3.14654400,
};
inline constexpr double summary_median = 3.0063785000000003;
inline constexpr double summary_sd = 0.41995160983708013;

}  // namespace refvals
