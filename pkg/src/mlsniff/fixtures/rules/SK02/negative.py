from sklearn.ensemble import RandomForestClassifier
from sklearn.model_selection import cross_val_score

clf = RandomForestClassifier(n_estimators=100, random_state=0)
clf.fit(X_train, y_train)  # near-miss: SK02
scores = cross_val_score(clf, X, y, cv=5)
