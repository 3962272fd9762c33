#pragma once

// Relation linking over a knowledge base: KB-enriched generator inputs,
// [Arg | Rel] output parsing, and KB validation of ranked beams.

#include "rellink/config.hpp"
#include "rellink/error.hpp"
#include "rellink/evaluation.hpp"
#include "rellink/generator.hpp"
#include "rellink/kb_store.hpp"
#include "rellink/knowledge_integration.hpp"
#include "rellink/knowledge_validation.hpp"
#include "rellink/ntriples.hpp"
#include "rellink/pipeline.hpp"
#include "rellink/records.hpp"
#include "rellink/sequence_grammar.hpp"
#include "rellink/similarity.hpp"
#include "rellink/term.hpp"
#include "rellink/text.hpp"
