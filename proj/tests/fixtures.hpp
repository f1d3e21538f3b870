#ifndef ADTCHOICE_TESTS_FIXTURES_HPP
#define ADTCHOICE_TESTS_FIXTURES_HPP

#include <string>

#include "adtchoice/enumeration.hpp"
#include "adtchoice/procedures.hpp"
#include "adtchoice/schema.hpp"
#include "adtchoice/term.hpp"
#include "adtchoice/universe.hpp"

namespace fx {

using namespace adtchoice;

inline const AdtSchema& list_schema() {
  static AdtSchema s = parse_schema("schema List\nSing: X\nCons: X, T\n");
  return s;
}

inline const AdtSchema& list2_schema() {
  static AdtSchema s = parse_schema("schema List2\nSing2: X\nCat: T, T\n");
  return s;
}

inline const AdtSchema& tree_schema() {
  static AdtSchema s = parse_schema("schema Tree\nLeaf: X\nNode: T, T, T\n");
  return s;
}

inline const AdtSchema& wines_schema() {
  static AdtSchema s = parse_schema("schema Wines\nWine: X\nRed: T, T\nDry: T, T\n");
  return s;
}

inline const AdtSchema& wines_nested_schema() {
  static AdtSchema s = parse_schema(
      "schema Shelves\nWine: X\nRed: T, T\nDry: T, T\ninner WList\n"
      "schema WList\nSing: X\nCons: X, T\n");
  return s;
}

inline const AdtSchema& result_schema() {
  static AdtSchema s = parse_schema(
      "schema Result\nR1: X\nR2: X, T\ninner Page\n"
      "schema Page\nP: X, X, X, X, X, X, X, X, X, X\n");
  return s;
}

// x, y, z with u(y), u(z) above a 0.5 threshold and u(x) below.
inline const Universe& uxyz() {
  static Universe u = Universe::from_json(R"({"elements":[
    {"id":"x","attrs":{"u":0.2}},
    {"id":"y","attrs":{"u":0.8}},
    {"id":"z","attrs":{"u":0.6}}]})");
  return u;
}

// Four elements, utility strictly descending x1 > x2 > x3 > x4.
inline const Universe& u4() {
  static Universe u = Universe::from_json(R"({"elements":[
    {"id":"x1","attrs":{"u":0.9,"known":true}},
    {"id":"x2","attrs":{"u":0.7,"known":false}},
    {"id":"x3","attrs":{"u":0.4,"known":true}},
    {"id":"x4","attrs":{"u":0.1,"known":false}}]})");
  return u;
}

inline const Universe& u6() {
  static Universe u = Universe::from_json(R"({"elements":[
    {"id":"x1","attrs":{"u":6}},
    {"id":"x2","attrs":{"u":5}},
    {"id":"x3","attrs":{"u":4}},
    {"id":"x4","attrs":{"u":3}},
    {"id":"x5","attrs":{"u":2}},
    {"id":"x6","attrs":{"u":1}}]})");
  return u;
}

inline const Universe& wines4() {
  static Universe u = Universe::from_json(R"({"elements":[
    {"id":"w1","attrs":{"red":true,"dry":true,"price":10}},
    {"id":"w2","attrs":{"red":true,"dry":false,"price":20}},
    {"id":"w3","attrs":{"red":false,"dry":true,"price":30}},
    {"id":"w4","attrs":{"red":false,"dry":false,"price":40}}]})");
  return u;
}

inline const Universe& wines6() {
  static Universe u = Universe::from_json(R"({"elements":[
    {"id":"w1","attrs":{"red":true,"dry":true,"price":30}},
    {"id":"w2","attrs":{"red":true,"dry":false,"price":15}},
    {"id":"w3","attrs":{"red":false,"dry":true,"price":8}},
    {"id":"w4","attrs":{"red":false,"dry":false,"price":22}},
    {"id":"w5","attrs":{"red":true,"dry":false,"price":12}},
    {"id":"w6","attrs":{"red":true,"dry":true,"price":40}}]})");
  return u;
}

// item1 best (rank 20) down to item20 (rank 1).
inline const Universe& search20() {
  static Universe u = [] {
    std::string json = R"({"elements":[)";
    for (int i = 1; i <= 20; ++i) {
      if (i > 1) json += ',';
      json += R"({"id":"item)" + std::to_string(i) + R"(","attrs":{"rank":)" +
              std::to_string(21 - i) + "}}";
    }
    json += "]}";
    return Universe::from_json(json);
  }();
  return u;
}

inline Term t(const AdtSchema& s, const Universe& u, const std::string& text) {
  return parse_term(s, u, text);
}

// [a, b, c] as nested Cons/Sing text.
inline std::string list_text(const std::vector<std::string>& ids) {
  std::string out;
  for (std::size_t i = 0; i + 1 < ids.size(); ++i) out += "(Cons " + ids[i] + " ";
  out += "(Sing " + ids.back() + ")";
  for (std::size_t i = 0; i + 1 < ids.size(); ++i) out += ")";
  return out;
}

inline Term list_term(const Universe& u, const std::vector<std::string>& ids) {
  return t(list_schema(), u, list_text(ids));
}

inline Procedure proc(ProcKind kind, const Universe& u, const AdtSchema& s,
                      std::map<std::string, std::string> params = {}) {
  return instantiate_procedure(ProcedureSpec::make(kind, std::move(params)), u, s);
}

}  // namespace fx

#endif
