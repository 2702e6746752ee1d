//
// Project fragretro
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <stdexcept>
#include <string>

namespace fragretro {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// SMILES input errors.
class SyntaxError : public Error {
 public:
  using Error::Error;
};

class MultiComponentError : public Error {
 public:
  using Error::Error;
};

class ValenceError : public Error {
 public:
  using Error::Error;
};

// Structural graph errors (self loops, parallel bonds, bad indices).
class GraphError : public Error {
 public:
  using Error::Error;
};

class NoSharedBond : public Error {
 public:
  using Error::Error;
};

class DisconnectedMembers : public Error {
 public:
  using Error::Error;
};

class RuleFormatError : public Error {
 public:
  using Error::Error;
};

class QueryHasNoInternalAtoms : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class TooManyParseFailures : public Error {
 public:
  using Error::Error;
};

class CacheVersionMismatch : public Error {
 public:
  using Error::Error;
};

class CorruptCache : public Error {
 public:
  using Error::Error;
};

class TooManyFragments : public Error {
 public:
  using Error::Error;
};

}  // namespace fragretro
