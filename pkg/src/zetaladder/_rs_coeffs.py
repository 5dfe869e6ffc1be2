"""Chebyshev coefficient tables for the Riemann-Siegel remainder terms.

Each table holds Chebyshev coefficients of the correction function C_j on the
fractional-part variable p in [0, 1] (mapped to [-1, 1] via u = 2p - 1).  The
remainder of the main-sum formula for Z(t) is reconstructed as

    (-1)^(N-1) * a^(-1/2) * sum_j C_j(p) * a^(-j),   a = sqrt(t / 2 pi) = N + p.

C0..C3 come from the classical combinations of derivatives of
Psi(p) = cos(2 pi (p^2 - p - 1/16)) / cos(2 pi p); C4 is calibrated against
high-precision reference values of Z(t).  Regenerate with
`python -m zetaladder._gen_rs_coeffs` (slow; needs mpmath).
"""

import numpy as np

C0 = np.array([
    0.6426672862397684, 4.85722573273506e-17, 0.271972999997855, 6.245004513516506e-17,
    0.010738605819340184, 1.3877787807814457e-17, -0.0013743815296337145, 4.163336342344337e-17,
    -0.00012468221880327247, -2.3592239273284576e-16, -5.764599707892837e-07, 2.498001805406602e-16,
    2.7280674303083174e-07, -2.7755575615628914e-16, 8.077952980134473e-09, 2.7755575615628914e-16,
    -2.0884644014174114e-10, -1.1102230246251565e-16, -1.3115418473486073e-11, 1.6653345369377348e-16,
    -1.4150139393542815e-14, 1.457167719820518e-16, 9.986803051198478e-15, 2.983724378680108e-16,
    5.724587470723463e-17, -1.97758476261356e-16, 4.0332320816460765e-16, -3.191891195797325e-16,
    -7.806255641895632e-18, -1.3877787807814457e-17, -1.3877787807814457e-16, -2.7755575615628914e-17,
    -4.3021142204224816e-16, 1.3877787807814457e-17, 2.1163626406917047e-16, 1.2628786905111156e-15,
    5.767955557622884e-17, -1.5265566588595902e-16, -4.0592529337857286e-16, -3.642919299551295e-16,
    -9.194034422677078e-17, 6.245004513516506e-17, -3.9898639947466563e-17, 3.400058012914542e-16,
    -3.2699537522162814e-16, 3.608224830031759e-16, -1.3739009929736312e-15, -3.7470027081099033e-16,
    6.800116025829084e-16, 1.0130785099704553e-15, -1.1449174941446927e-16, 5.551115123125783e-16,
    5.026361271642799e-16, -9.367506770274758e-17, 5.234528088760015e-16, 1.8388068845354155e-16,
    -3.0270924655795284e-16, 9.315465065995454e-16, -1.7338561142388187e-15, 2.7755575615628914e-16,
    -6.908536243077634e-16, -3.469446951953614e-16, 8.328841089033645e-16, 4.718447854656915e-16,
])

C1 = np.array([
    8.673617379884035e-19, 0.010697913921002998, 8.673617379884035e-19, 0.017170651243377882,
    8.673617379884035e-19, 0.0027932111497884667, 8.673617379884035e-19, -3.637565371927848e-05,
    2.6020852139652106e-18, -2.71089552311495e-05, 4.7704895589362195e-18, -1.0483749866844116e-06,
    -1.734723475976807e-18, 5.88646716687298e-08, 1.951563910473908e-18, 4.3229672543488445e-09,
    4.228388472693467e-18, -1.1369586478890414e-11, -3.903127820947816e-18, -6.6998355648106855e-12,
    1.734723475976807e-18, -1.0080516065977263e-13, 9.540979117872439e-18, 5.145284697437302e-15,
    7.37257477290143e-18, 1.5997403055023618e-16, -6.5052130349130266e-18, 1.5720931501039814e-18,
    3.0357660829594124e-18, -3.686287386450715e-18, 7.752045533271357e-18, 1.1926223897340549e-17,
    6.0173220572945496e-18, 7.589415207398531e-19, -7.643625316022806e-18, -1.929879867024198e-17,
    -5.637851296924623e-18, -8.72782748850831e-18, 1.1058862159352145e-17, -2.8053731213062427e-18,
    4.336808689942018e-18, -1.2935887170467675e-17, 2.168404344971009e-19, -1.2522535092207576e-17,
    1.0842021724855044e-17, 8.456776945386935e-18, 3.371868756429919e-17, 7.48099499014998e-18,
    -5.800481622797449e-18, -1.5395670849294163e-17, -8.998878031629687e-18, -1.474514954580286e-17,
    -2.2985086056692694e-17, -1.2197274440461925e-17, 5.421010862427522e-18, -4.662069341687669e-18,
    -3.0357660829594124e-18, -1.3064636178450328e-17, 2.656295322589486e-17, -4.106415728288848e-18,
    1.7564075194265172e-17, 9.012430558785756e-18, -1.428436362249652e-17,
])

C2 = np.array([
    0.0031461158539889114, 5.421010862427522e-20, -0.0023087838845307507, 1.8973538018496328e-19,
    5.7698207666898437e-05, -4.607859233063394e-19, 0.0003523886202366591, -1.6263032587282567e-19,
    2.5246667458684316e-05, -1.0028870095490916e-18, -3.442821197193225e-06, 4.404571325722362e-19,
    -3.535074556620703e-07, -9.75781955236954e-19, 3.730830183473147e-09, -4.336808689942018e-19,
    1.277695185547198e-09, 0.0, 2.1874616484493514e-11, 2.168404344971009e-19,
    -1.9141402059306284e-12, 4.1335207826009857e-19, -6.562905465390054e-14, -1.7618285302889447e-19,
    1.2597641503640615e-15, -5.082197683525802e-19, 8.254166664403706e-17,
])

C3 = np.array([
    1.1858461261560205e-20, 7.123256221203948e-05, 5.082197683525802e-21, 0.00023234305298164824,
    5.082197683525802e-21, -0.00012929912045472485, 1.3552527156068805e-20, 1.8074496413671437e-05,
    2.202285662861181e-20, 6.526185187220442e-06, 8.555032767268433e-20, -1.1696365378527162e-07,
    -1.3552527156068805e-20, -7.349476126520534e-08, 8.470329472543003e-21, -1.775091007919004e-09,
    2.0328790734103208e-20, 2.5555529617994556e-10, -1.0842021724855044e-19, 1.1376636510293265e-11,
    2.710505431213761e-20, -3.3498645345261466e-13, 5.251604272976662e-20, -2.55374356135775e-14,
    8.470329472543003e-21, 6.77979994058919e-17, -1.0757318430129614e-19, 2.985282919303056e-17,
])

C4 = np.array([
    0.00016765744092885396, -6.705364383432601e-12, -0.00022728767723561872, 6.604630398369051e-13,
    6.477387246788299e-05, -6.147389986102724e-13, -8.492200402625919e-06, 1.7288615992884103e-13,
    -2.616141042996157e-06, -2.7406523396581665e-14, 8.336766384998645e-07, -6.587544637386145e-17,
    6.324700894390889e-08, 1.3345037965309392e-15, -1.0059946989248391e-08, -2.859041128844275e-16,
    -7.822672869444835e-10, 8.931115395849343e-18, 3.1676492842863755e-11, 4.3164798992079145e-18,
    3.5006932079431185e-12, -5.285485590866834e-19, -1.4313901143674936e-14, 2.319811484292715e-19,
    -7.269266611247796e-15, -9.910285482875314e-20, -8.774329597312572e-17,
])

TABLES = (C0, C1, C2, C3, C4)
