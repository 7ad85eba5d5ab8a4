#include "grassde/reference_data.hpp"

#include "grassde/csv.hpp"

namespace grassde::refdata {

std::string_view p1_csv() {
  static constexpr std::string_view kText = R"csv(-0.1502,0.1246,-0.1858,0.2688,-0.2283
0.2359,-0.0589,0.2190,0.2316,-0.2573
-0.1873,0.2200,-0.2186,0.0325,0.2314
0.2177,-0.2193,0.1236,-0.1784,-0.2835
-0.2634,-0.2732,0.1612,-0.2198,-0.3349
-0.2404,-0.3304,-0.1157,-0.2327,0.0783
0.3175,-0.0554,-0.2848,-0.1629,0.1717
-0.2523,-0.3586,-0.0888,-0.0295,0.3059
-0.2005,0.2531,-0.0529,0.1442,-0.1602
0.0254,-0.1304,0.1385,-0.2107,0.1724
0.1812,-0.1600,0.2000,-0.1225,-0.1943
0.0416,-0.3669,0.1466,0.1045,-0.2294
-0.3154,0.1979,-0.1573,-0.3159,-0.3247
0.0743,-0.2198,-0.1068,-0.1548,0.2115
0.3148,-0.1081,-0.2910,0.1124,-0.0073
0.0779,-0.1567,-0.2197,0.5016,-0.1341
0.2904,-0.1657,-0.5193,-0.0795,-0.1225
-0.2637,-0.1801,-0.3949,-0.0870,-0.1839
-0.1490,-0.2496,0.2044,0.3056,0.3657
0.2933,0.2863,0.0780,-0.3535,0.0994
)csv";
  return kText;
}

std::string_view p2_csv() {
  static constexpr std::string_view kText = R"csv(-0.3143,0.2694,-0.3297,-0.0142,-0.0316
0.2495,-0.4235,-0.1919,0.0592,0.2191
0.1312,-0.2700,-0.1111,-0.2714,0.3331
0.0052,0.0628,0.3018,-0.0509,0.2455
-0.0178,0.2174,-0.4209,-0.0639,0.0344
-0.1033,-0.2140,-0.0939,0.0698,0.1463
-0.3831,-0.3233,0.0490,0.2698,-0.1727
0.1377,-0.1426,-0.2619,-0.2988,-0.1954
-0.0264,-0.0658,-0.2540,0.2472,0.1171
0.1635,-0.2928,0.1476,-0.2246,0.2523
-0.0590,-0.4255,-0.2355,0.3699,-0.1399
-0.1270,-0.2882,0.0749,-0.3339,-0.3113
-0.1377,-0.1466,0.4141,-0.1233,-0.1324
0.1962,-0.0535,0.0452,0.3463,-0.4008
0.2896,0.2502,0.0689,0.0445,-0.1669
-0.2139,-0.0713,0.0357,-0.2400,-0.1482
-0.1248,0.0012,-0.0471,0.1948,0.2094
0.4086,0.0366,-0.1849,0.0221,0.0743
-0.3234,0.0763,0.1542,0.1983,0.4666
-0.3518,0.0003,-0.3270,-0.3416,-0.0133
)csv";
  return kText;
}

std::string_view p3_csv() {
  static constexpr std::string_view kText = R"csv(-0.1390,-0.1537,-0.3595,0.1077,-0.1327
0.3579,-0.3058,-0.1719,0.2780,-0.1325
0.1792,-0.0517,-0.0835,-0.0192,-0.2234
-0.1217,0.0481,-0.0312,-0.0190,-0.2553
0.0480,0.0721,0.3349,-0.1425,-0.5004
0.0613,0.1127,-0.2846,0.1409,-0.1942
-0.3438,-0.2623,0.0629,0.3949,-0.2553
0.0982,-0.3549,0.3214,-0.1534,0.0771
0.2514,0.3808,0.4924,0.1946,-0.1096
-0.0955,0.0599,-0.0881,-0.3908,-0.1217
0.1858,-0.0130,-0.2281,-0.2885,0.3168
0.3453,0.1694,-0.1641,0.3670,0.2529
0.2726,-0.2969,-0.0442,-0.1964,-0.2372
-0.0720,0.2829,-0.0233,0.0393,-0.2494
0.3083,-0.2587,-0.0587,0.0192,-0.1084
0.0901,0.1662,-0.1897,-0.3868,-0.1561
0.2764,-0.1413,0.3400,0.0447,0.1874
0.1009,0.2984,-0.1802,0.2640,-0.1090
0.3156,-0.0803,-0.0893,-0.0274,-0.3126
0.2773,0.3309,-0.0759,-0.1401,0.0012
)csv";
  return kText;
}

std::uint64_t fnv1a64(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

ReferenceFrame load_p1() { return accept_reference(parse_csv_matrix(p1_csv())); }
ReferenceFrame load_p2() { return accept_reference(parse_csv_matrix(p2_csv())); }
ReferenceFrame load_p3() { return accept_reference(parse_csv_matrix(p3_csv())); }

}  // namespace grassde::refdata
