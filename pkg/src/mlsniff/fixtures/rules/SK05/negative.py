from sklearn.metrics import accuracy_score, f1_score

acc = accuracy_score(y_test, y_pred)  # near-miss: SK05
f1 = f1_score(y_test, y_pred)
