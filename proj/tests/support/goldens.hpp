// Generated by tests/oracles/goldens.py; values are frozen, do not edit by hand.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace golden {

struct GoldenRow {
  std::string name;
  std::int64_t t_gates, rotations, ancilla, calls;
};

inline constexpr double kRhoN8 = 3.1743333333333332;  // N=8 x=0.1 mu=1 Lambda=2
inline constexpr long long kStepsN8 = 200;  // t=5 eps=0.01
inline constexpr double kOmega = 0.567143290409783873;
inline constexpr int kDeltaHalfHalf = 9;  // x=0.5 t=0.5 eps=1e-3
inline constexpr int kLambdaT = 19;  // Lambda0=1 x=0.1 t=5 eps=1e-3
inline constexpr int kClosedFormL = 11;
inline constexpr int kLightconeL = 15;
inline constexpr int kSystemSize = 38;
inline constexpr int kSmallOrder = 4;
inline constexpr std::int64_t kSmallPoints = 16384;
inline constexpr std::int64_t kSmallPointsCollisions = 32768;
inline constexpr std::int64_t kRotDefault = 71000;  // 1000 rotations, eps3=1e-3

// ip plan: x=0.1 mu=1 rho=0.5 t=5 eps=0.01 n0=8, sorted, alpha = 2 N x
inline constexpr std::int64_t kIp_lambda0 = 1;
inline constexpr std::int64_t kIp_delta = 9;
inline constexpr std::int64_t kIp_lambda_t = 17;
inline constexpr std::int64_t kIp_n = 38;
inline constexpr std::int64_t kIp_l = 15;
inline constexpr std::int64_t kIp_eta = 6;
inline constexpr std::int64_t kIp_r = 55;
inline constexpr std::int64_t kIp_k = 7;
inline constexpr std::int64_t kIp_m = 67108864;
inline constexpr std::int64_t kIpTotal_pga = 987019110;
inline constexpr std::int64_t kIpRotations_pga = 7669915;
inline constexpr std::int64_t kIpTotal_mult = 46243725;
inline constexpr std::int64_t kIpRotations_mult = 19195;
inline constexpr std::int64_t kIpUnsorted_r = 76;
inline constexpr long long kPf2Steps = 3738;
inline constexpr std::int64_t kPf2Total = 122843846;

inline const std::vector<GoldenRow> kTable2_N8_eta3_r5 = {
    {"exp_HM_half", 40, 1, 12, 2},
    {"exp_HM_full", 40, 1, 12, 4},
    {"exp_HE_half", 140, 21, 3, 2},
    {"exp_HE_full", 140, 21, 3, 4},
    {"exp_H1e_half", 56, 1, 15, 10},
    {"exp_H1o_half", 56, 1, 15, 10},
    {"exp_H2e_half", 184, 1, 15, 10},
    {"exp_H2o_full", 184, 1, 15, 5},
};
inline const std::vector<GoldenRow> kTable2_N9_eta3_r1 = {
    {"exp_HM_half", 44, 1, 13, 2},
    {"exp_HM_full", 44, 1, 13, 0},
    {"exp_HE_half", 160, 24, 3, 2},
    {"exp_HE_full", 160, 24, 3, 0},
    {"exp_H1e_half", 62, 1, 17, 2},
    {"exp_H1o_half", 62, 1, 17, 2},
    {"exp_H2e_half", 206, 1, 17, 2},
    {"exp_H2o_full", 206, 1, 17, 1},
};
inline const std::vector<GoldenRow> kTable2_N4_eta2_r7 = {
    {"exp_HM_half", 20, 1, 7, 2},
    {"exp_HM_full", 20, 1, 7, 6},
    {"exp_HE_half", 24, 6, 2, 2},
    {"exp_HE_full", 24, 6, 2, 6},
    {"exp_H1e_half", 28, 1, 8, 14},
    {"exp_H1o_half", 28, 1, 8, 14},
    {"exp_H2e_half", 60, 1, 8, 14},
    {"exp_H2o_full", 60, 1, 8, 7},
};
inline const std::vector<GoldenRow> kTable3_N8_eta3_K4_M16_pga = {
    {"prep_khot", 0, 7, 0, 6},
    {"prep_time", 32, 0, 0, 6},
    {"sort", 96, 0, 10, 6},
    {"block_encoding", 119, 0, 2, 12},
    {"exp_HM_pga", 92, 4, 12, 15},
    {"exp_HE_pga", 560, 84, 3, 15},
    {"select_extra", 216, 0, 9, 3},
    {"reflection", 92, 0, 23, 2},
};
inline const std::vector<GoldenRow> kTable3_N8_eta3_K4_M16_mult = {
    {"prep_khot", 0, 7, 0, 6},
    {"prep_time", 32, 0, 0, 6},
    {"sort", 96, 0, 10, 6},
    {"block_encoding", 119, 0, 2, 12},
    {"exp_HM_mult", 316, 1, 23, 15},
    {"exp_HE_mult", 2036, 1, 41, 15},
    {"select_extra", 216, 0, 9, 3},
    {"reflection", 92, 0, 23, 2},
};
inline const std::vector<GoldenRow> kTable3_N9_eta3_K4_M16_pga = {
    {"prep_khot", 0, 7, 0, 6},
    {"prep_time", 32, 0, 0, 6},
    {"sort", 96, 0, 10, 6},
    {"block_encoding", 135, 0, 2, 12},
    {"exp_HM_pga", 96, 4, 13, 15},
    {"exp_HE_pga", 640, 96, 3, 15},
    {"select_extra", 232, 0, 10, 3},
    {"reflection", 92, 0, 23, 2},
};
inline const std::vector<GoldenRow> kTable3_N9_eta3_K4_M16_mult = {
    {"prep_khot", 0, 7, 0, 6},
    {"prep_time", 32, 0, 0, 6},
    {"sort", 96, 0, 10, 6},
    {"block_encoding", 135, 0, 2, 12},
    {"exp_HM_mult", 320, 1, 24, 15},
    {"exp_HE_mult", 2280, 1, 44, 15},
    {"select_extra", 232, 0, 10, 3},
    {"reflection", 92, 0, 23, 2},
};
inline const std::vector<GoldenRow> kTable3_N4_eta2_K2_M8_pga = {
    {"prep_khot", 0, 3, 0, 6},
    {"prep_time", 12, 0, 0, 6},
    {"sort", 24, 0, 5, 6},
    {"block_encoding", 43, 0, 1, 6},
    {"exp_HM_pga", 48, 3, 7, 9},
    {"exp_HE_pga", 72, 18, 2, 9},
    {"select_extra", 56, 0, 5, 3},
    {"reflection", 36, 0, 9, 2},
};
inline const std::vector<GoldenRow> kTable3_N4_eta2_K2_M8_mult = {
    {"prep_khot", 0, 3, 0, 6},
    {"prep_time", 12, 0, 0, 6},
    {"sort", 24, 0, 5, 6},
    {"block_encoding", 43, 0, 1, 6},
    {"exp_HM_mult", 204, 1, 15, 9},
    {"exp_HE_mult", 692, 1, 28, 9},
    {"select_extra", 56, 0, 5, 3},
    {"reflection", 36, 0, 9, 2},
};

}  // namespace golden
