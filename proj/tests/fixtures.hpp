#pragma once

#include <string>

#include "cohn/groups.hpp"

namespace fx {

using nlohmann::json;

inline cohn::GroupPtr free2() { return cohn::group_from_json(json::parse(R"({"type":"free","labels":["a","b"]})")); }

inline cohn::GroupPtr z2() {
  return cohn::group_from_json(json::parse(R"({"type":"free_abelian","labels":["a","b"]})"));
}

// Z^2 as an HNN extension of <a> along the identity
inline cohn::GroupPtr z2_hnn() {
  return cohn::group_from_json(json::parse(R"({
    "type":"hnn","base":{"type":"free","labels":["a"]},
    "edge_group":{"type":"free","labels":["s"]},
    "alpha":{"images":["a"]},"beta":{"images":["a"]},"stable":"z"})"));
}

// Laurent ring group: <z>
inline cohn::GroupPtr laurent() {
  return cohn::group_from_json(json::parse(R"({
    "type":"hnn","base":{"type":"trivial"},"edge_group":{"type":"trivial"},
    "alpha":{"images":[]},"beta":{"images":[]},"stable":"z"})"));
}

// a z = z a^-1
inline cohn::GroupPtr klein() {
  return cohn::group_from_json(json::parse(R"({
    "type":"hnn","base":{"type":"free","labels":["a"]},
    "edge_group":{"type":"free","labels":["s"]},
    "alpha":{"images":["a"]},"beta":{"images":["a^-1"]},"stable":"z"})"));
}

// <a, b | a^2 = b^3>
inline cohn::GroupPtr trefoil() {
  return cohn::group_from_json(json::parse(R"({
    "type":"amalgam","left":{"type":"free","labels":["a"]},"right":{"type":"free","labels":["b"]},
    "edge":{"group":{"type":"free","labels":["c"]},"left_images":["a^2"],"right_images":["b^3"],
            "left_transversal":["","a"],"right_transversal":["","b","b^2"]}})"));
}

// surface group of genus 2 as F(a1,b1) *_Z F(a2,b2) along [a1,b1] = [b2,a2]
inline cohn::GroupPtr genus2() {
  return cohn::group_from_json(json::parse(R"({
    "type":"amalgam","left":{"type":"free","labels":["a1","b1"]},"right":{"type":"free","labels":["a2","b2"]},
    "edge":{"group":{"type":"free","labels":["c"]},
            "left_images":["a1 b1 a1^-1 b1^-1"],"right_images":["b2 a2 b2^-1 a2^-1"]}})"));
}

inline std::string s3_json() {
  // elements as permutations of {0,1,2}: e, (01), (12), (02), (012), (021)
  return R"({"type":"finite","elements":["e","p","q","r","c","d"],"table":[
    [0,1,2,3,4,5],
    [1,0,5,4,3,2],
    [2,4,0,5,1,3],
    [3,5,4,0,2,1],
    [4,2,3,1,5,0],
    [5,3,1,2,0,4]]})";
}

inline cohn::GroupPtr s3() { return cohn::group_from_json(json::parse(s3_json())); }

// SL(2,Z) = Z/4 *_{Z/2} Z/6
inline cohn::GroupPtr sl2z() {
  return cohn::group_from_json(json::parse(R"({
    "type":"amalgam",
    "left":{"type":"finite","elements":["e","s","s2","s3"],
            "table":[[0,1,2,3],[1,2,3,0],[2,3,0,1],[3,0,1,2]]},
    "right":{"type":"finite","elements":["f","t","t2","t3","t4","t5"],
             "table":[[0,1,2,3,4,5],[1,2,3,4,5,0],[2,3,4,5,0,1],[3,4,5,0,1,2],[4,5,0,1,2,3],[5,0,1,2,3,4]]},
    "edge":{"group":{"type":"finite","elements":["i","u"],"table":[[0,1],[1,0]]},
            "left_images":["","s2"],"right_images":["","t3"]}})"));
}

}  // namespace fx
