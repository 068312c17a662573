#pragma once

#include <vector>

// Reference outputs of PyWavelets (mode="symmetric") and scipy.signal.resample_poly.
namespace fixtures {

inline const std::vector<double> dwt_input = {
        0.0, 0.3255202066613395, 0.6246424733950353, 0.8733269096274834, 1.0520390859672262,
        1.2474949866040546, 1.2538476308781954, 1.1732093666488737, 1.015463180551151, 0.7973798802338302,
        0.6411200080598672, 0.3722543058567518, 0.11747955670514801, -0.09776615918397374,
        -0.25157577241358814, -0.227530117665097, -0.21616460883584063, -0.11581468232773237,
        0.06723551244401232, 0.3193144574023625, 0.7205845018010741, 1.0468139004843497, 1.371541363513378,
        1.6684397643881996, 1.9136678638491529, 2.187999976774739, 2.278543345374605, 2.2798898108450865,
        2.1945989080882806, 2.0329692300821836, 1.9121184852417565, 1.6544544235070635, 1.3856732187770204,
        1.1324641062246787, 0.9201253124064578, 0.87030424002833, 0.7990637699335088,
};
// wavedec(dwt_input, "db4", level=3): A3, D3, D2, D1
inline const std::vector<double> db4_a3 = {
        1.6175525946683573, 1.7725922447051623, 1.694927617371142, 1.9709012837713962, 1.2122006624431771,
        3.1375315595085636, -0.5886494779288973, 3.7486457703987845, 5.14494203080167, 2.076969849526755,
};
inline const std::vector<double> db4_d3 = {
        0.42667241574145226, 1.3562308593285517, -0.5026310433427401, -0.1558107658417617,
        -0.11863066123648144, 0.7321155257892861, -1.087381539047185, 0.3862833528750671, 0.6579284100295535,
        -0.8806116453924128,
};
inline const std::vector<double> db4_d2 = {
        -0.14387285138600156, -0.4004765909696035, 0.325853303010512, -0.18584901514574653,
        -0.02195696659102908, 0.07887429954722978, 0.06616361509992534, -0.028815409969545534,
        -0.0798304324369902, -0.028129752062748134, 0.0538990458510818, 0.02250647384264249,
        -0.02722326617003283, 0.03565726291026243,
};
inline const std::vector<double> db4_d1 = {
        0.011848161152259527, 0.020208319326660673, -0.04635969463490354, -0.018530057458925206,
        -0.002606747329969665, 0.04700630088606464, -0.017696125582450227, -0.01661290066532867,
        -0.010956474581318317, 0.005269335843556173, 0.05243354190666179, -0.01661361814598157,
        -0.020253277804481003, -0.01804804782707846, -0.0027961429482241187, 0.04621166135611148,
        -0.018818418574366665, -0.01767079788855891, -0.007805994513576341, 0.02291452230079652,
        0.021193770142048575, 0.00047942343181094603,
};

inline const std::vector<double> resample_input = {
        1.0, 1.0631720291187354, 1.0935491382768718, 1.0750920146009297, 1.0135653928568322,
        0.9338340989416828, 0.8681789118842472, 0.8411274515849456, 0.8579343302156529, 0.9021284924011118,
        0.9432812217622517, 0.9513413454472057, 0.9107955057185064, 0.8279936347839911, 0.7281942743592957,
        0.6437192928766539, 0.5987889364320337, 0.5981694346612786, 0.624972272992778, 0.6486400656835436,
        0.6393630414376268, 0.5821457310060204, 0.4839079571001477, 0.37028029916575655, 0.2736010511185231,
        0.21775976184845292, 0.20701554638395894, 0.22404895587372262, 0.23816350490705412,
        0.21977940995095707, 0.15440276552130852, 0.04950009293586527, -0.06895509061343211,
        -0.1686396255887021, -0.22602433886991127, -0.23738180863600453, -0.22048128744053963,
        -0.20617377999928874, -0.22382508947571977, -0.28744804129174906,
};
// resample_poly(resample_input, up, down) at fs 1000
inline const std::vector<double> resample_up3 = {
        1.0006061735537772, 1.1501388649109565, 1.1407712198435511, 1.0638164958859029, 1.0161085460409236,
        1.036647880789155, 1.0942120188442512, 1.1308031412609911, 1.1190708532809843, 1.075743706948058,
        1.0349541355839318, 1.0171889286656517, 1.0141797893930058, 1.0031662229165956, 0.9738515436913513,
        0.9344001644760767, 0.899569741324439, 0.8786858701972846, 0.8687051789805785, 0.8602217480406288,
        0.8500106746572685, 0.8416373208014525, 0.8393906506083668, 0.8457187962348017, 0.8584543873175072,
        0.8727679798858521, 0.8873733235257277, 0.9026753388353143, 0.9176290583325373, 0.9318125902159835,
        0.9438530138926586, 0.9506204883194773, 0.9536019874520552, 0.9519180234114307, 0.943174105194008,
        0.9296914240169979, 0.9113476058669722, 0.8867340500989238, 0.8589401667874597, 0.8284955426280931,
        0.7948006695351024, 0.7612615768836924, 0.7286356864704243, 0.6966136953933493, 0.668290942972705,
        0.6441094984880519, 0.6234353298064527, 0.6085426644396063, 0.5991519064495932, 0.5938844268973483,
        0.594037503741322, 0.5985320291532481, 0.605219241716646, 0.6146892250856408, 0.6253511146565103,
        0.6346685070581645, 0.6430905705192275, 0.6490332541372813, 0.6501847079708293, 0.6474475484549965,
        0.6397506064046089, 0.6255620119828077, 0.6065787260964679, 0.5824986123526006, 0.5528085425450151,
        0.5199250089820541, 0.4842012893062042, 0.4459540040436323, 0.40786203239556124, 0.37050475329059557,
        0.3345017505664526, 0.30216811850566283, 0.27376690083999683, 0.24960476667787873, 0.231130740618487,
        0.21789176205716226, 0.20946708280434198, 0.2062960263861779, 0.20714103373339765,
        0.21083643483422904, 0.21709308182528766, 0.22418476842552468, 0.23058916733272164,
        0.23586126396419485, 0.23830787332520367, 0.23666183737215674, 0.2309158582290509, 0.2199126344169341,
        0.2031880744463239, 0.18150702725423212, 0.1544963603943976, 0.12212902582074393, 0.08679941243286877,
        0.049530098583112504, 0.010519766705234577, -0.029056303410797957, -0.06899688936576029,
        -0.10781445607761651, -0.14162541397771392, -0.16874185046985288, -0.190477148409427,
        -0.2090682442528747, -0.22616134884664418, -0.23948756244993408, -0.24375962591973444,
        -0.23752570321054747, -0.2263544418043711, -0.21910454979421637, -0.22061493736608884,
        -0.22557830554988678, -0.22230237685808327, -0.2062987570922066, -0.18886459809101258,
        -0.1906720564767499, -0.22396076632563178, -0.27549937375733924, -0.30849929919861363,
        -0.2876222846924652, -0.20618002661987414, -0.09408539566994018,
};
inline const std::vector<double> resample_down2 = {
        0.7625131426414645, 1.1584829417519729, 0.9805230411838047, 0.8890383109284927, 0.8451897357665966,
        0.9521633199514538, 0.9060700470664572, 0.7317226030648649, 0.5974892083783667, 0.6261149763046013,
        0.6395818612836248, 0.48351974449859064, 0.2742026291787376, 0.20553874928214438, 0.24032946019781762,
        0.15066964323165372, -0.06369172782142718, -0.23503417666304383, -0.20634428115240125,
        -0.2528301333100218,
};
inline const std::vector<double> resample_2_3 = {
        0.8405945740347167, 1.1330878715025459, 1.049919545733233, 0.9900277385657392, 0.8584898827622014,
        0.8514622036064974, 0.8985892301463102, 0.9557663614401105, 0.9100214803399517, 0.7791427753201798,
        0.6439076537128822, 0.5934804596060754, 0.6251795649883852, 0.6496109640359538, 0.5823612196126569,
        0.4269770240606735, 0.2736669816212773, 0.2069225504693093, 0.22439650991564422, 0.23349716761575437,
        0.15557952809073997, -0.01226909571224419, -0.16585084062804983, -0.2419073656646216,
        -0.21296255088177568, -0.22531567303291397, -0.23158869790644765,
};

}  // namespace fixtures
