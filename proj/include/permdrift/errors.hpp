/*
 * Copyright (C) 2026 The Permdrift Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <stdexcept>
#include <string>

namespace permdrift {

// Base class for all recoverable analysis errors. Per-file failures are
// caught at the corpus loop and logged; they never abort a run.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class MalformedContainer : public Error {
public:
    using Error::Error;
};

class MalformedManifest : public Error {
public:
    using Error::Error;
};

class MalformedDex : public Error {
public:
    using Error::Error;
};

class ClassNotFound : public Error {
public:
    using Error::Error;
};

class CatalogInvalid : public Error {
public:
    using Error::Error;
};

class DegenerateTable : public Error {
public:
    using Error::Error;
};

class DegenerateStratum : public Error {
public:
    using Error::Error;
};

class AlreadyInstalled : public Error {
public:
    using Error::Error;
};

class NotRequested : public Error {
public:
    using Error::Error;
};

class NotDangerous : public Error {
public:
    using Error::Error;
};

class DowngradeRejected : public Error {
public:
    using Error::Error;
};

class OutOfOrder : public Error {
public:
    using Error::Error;
};

class MissingInput : public Error {
public:
    using Error::Error;
};

} // namespace permdrift
