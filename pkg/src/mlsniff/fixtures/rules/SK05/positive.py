from sklearn.metrics import accuracy_score

acc = accuracy_score(y_test, y_pred)  # expect: SK05
