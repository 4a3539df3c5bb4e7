/* miniboost — ensemble classification toolkit.
 *
 * C interface to the shared library. All objects are opaque handles created
 * and released through the functions below; every fallible call returns an
 * mb_status and leaves a human-readable message in mb_last_error() (thread
 * local) on failure. Strings returned through char** are heap allocated and
 * must be released with mb_string_free().
 */

#ifndef MINIBOOST_H
#define MINIBOOST_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mb_status {
  MB_OK = 0,
  MB_ERR_INVALID_ARGUMENT = 1,
  MB_ERR_PARSE = 2,
  MB_ERR_IO = 3,
  MB_ERR_INTERNAL = 4
} mb_status;

const char* mb_status_name(mb_status status);

/* message for the most recent failure on this thread; never NULL */
const char* mb_last_error(void);

void mb_string_free(char* s);

/* ------------------------------------------------------------------ */
/* datasets                                                            */

typedef struct mb_dataset mb_dataset;

/* dispatches on the file extension: .arff or .csv */
mb_status mb_dataset_load(const char* path, int allow_missing_class, mb_dataset** out);
mb_status mb_dataset_load_arff(const char* path, int allow_missing_class, mb_dataset** out);
/* class_column: 0-based, or -1 for the last column */
mb_status mb_dataset_load_csv(const char* path, int has_header, int class_column,
                              int allow_missing_class, mb_dataset** out);
void mb_dataset_free(mb_dataset* ds);

size_t mb_dataset_size(const mb_dataset* ds);
int mb_dataset_num_attributes(const mb_dataset* ds);
int mb_dataset_num_classes(const mb_dataset* ds);
int mb_dataset_class_index(const mb_dataset* ds);
/* name of a class value; the pointer stays valid while the dataset lives */
const char* mb_dataset_class_name(const mb_dataset* ds, int class_value);

/* seeded stratified holdout split; train_fraction in (0, 1) */
mb_status mb_dataset_split(const mb_dataset* ds, double train_fraction, uint64_t seed,
                           mb_dataset** train, mb_dataset** test);

/* ------------------------------------------------------------------ */
/* models                                                              */

typedef struct mb_model mb_model;

/* learner_spec examples:
 *   nb
 *   stump
 *   j48(C=0.25, M=2)
 *   adaboost(base=j48, I=20, P=50, Q=on, C=0.25, M=2, seed=7)
 * seed is used unless the spec pins its own. */
mb_status mb_train(const char* learner_spec, const mb_dataset* train, uint64_t seed,
                   mb_model** out);
void mb_model_free(mb_model* model);

/* holdout error rate: misclassified weight / total weight */
mb_status mb_model_error(const mb_model* model, const mb_dataset* test, double* error_out);

/* argmax class value per instance; labels_out must hold mb_dataset_size ints */
mb_status mb_model_predict(const mb_model* model, const mb_dataset* ds, int* labels_out);

/* per-class distribution for one instance; dist_out must hold num_classes */
mb_status mb_model_distribution(const mb_model* model, const mb_dataset* ds, size_t row,
                                double* dist_out);

/* indented text rendering of the model */
mb_status mb_model_dump(const mb_model* model, char** text_out);

/* ------------------------------------------------------------------ */
/* tuning                                                              */

/* Cross-validated grid search, e.g. grid "P=10:100:10,I=10:50:10".
 * result_json_out receives {"chosen": {...}, "cv_error": ..., "folds": ...,
 * "spec": ..., "table": [{"point": {...}, "cv_error": ...}, ...]}.
 * model_out (optional) receives the model retrained on the full dataset
 * with the chosen parameters. */
mb_status mb_tune(const char* base_spec, const char* grid, const mb_dataset* ds, int folds,
                  uint64_t seed, mb_model** model_out, char** result_json_out);

/* ------------------------------------------------------------------ */
/* benchmark suite                                                     */

/* config_json:
 *   {
 *     "datasets": ["a.arff", ...],   // required
 *     "split": 0.667,                // default 2/3
 *     "seed": 0,                     // default 0
 *     "learners": ["lb","l5","nb"],  // default; raw specs also accepted
 *     "grid": "P=10:100:10,I=10:50:10",
 *     "folds": 10,
 *     "jobs": 1
 *   }
 * report_json_out receives the canonical JSON report. */
mb_status mb_bench(const char* config_json, char** report_json_out);

/* renders a JSON report as "json", "markdown" or "csv" */
mb_status mb_report_render(const char* report_json, const char* format, char** out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* MINIBOOST_H */
